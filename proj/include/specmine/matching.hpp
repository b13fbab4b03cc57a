#pragma once

#include <Eigen/Dense>
#include <vector>

namespace specmine {

// Maximum-weight bipartite matching for a (possibly rectangular) weight
// matrix with non-negative entries. Returns, per row, the matched column or
// -1. Runs the O(n^3) Hungarian algorithm on a zero-padded square matrix, so
// leaving a pair unmatched is never worse than matching it at weight 0.
std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weights);

}  // namespace specmine
