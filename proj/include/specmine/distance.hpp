#pragma once

#include <Eigen/Dense>
#include <filesystem>

#include "specmine/corpus.hpp"

namespace specmine {

// Symmetric pairwise term distances in [0,1] with a zero diagonal, indexed
// by a fixed vocabulary ordering.
struct DistanceMatrix {
  Vocabulary vocab;
  Eigen::MatrixXd entries;

  double at(std::string_view a, std::string_view b) const;
  // Throws when the symmetry / zero-diagonal / [0,1] invariants are broken.
  void validate() const;
};

// Co-occurrence distance (matrix A). For an ordered pair (A,B):
//   follow_pct(A,B) = (#occurrences of A followed by B within `window`
//                      positions) / total_occurrences(A)
// and entry(A,B) = ((1 - follow_pct(A,B)) + (1 - follow_pct(B,A))) / 2.
// The numerator counts at most one follow event per A occurrence, keeping
// each direction in [0,1] for any window. Pairs that never co-occur get 1.
Eigen::MatrixXd cooccurrence_counts(const Corpus& c, const Vocabulary& vocab, int window);
DistanceMatrix cooccurrence_distance_matrix(const Corpus& c, const Vocabulary& vocab, int window);

// Entrywise alpha*A + (1-alpha)*B over an identical vocabulary.
DistanceMatrix blend(const DistanceMatrix& a, const DistanceMatrix& b, double alpha);

// Text dump: vocab size, escaped tokens, then lower-triangular rows of
// floats printed with enough digits to round-trip bit-exactly.
void save_matrix(const DistanceMatrix& m, const std::filesystem::path& path);
DistanceMatrix load_matrix(const std::filesystem::path& path);

// Shortest-prefix text rendering of a double that parses back bit-exactly.
std::string format_double(double v);

}  // namespace specmine
