#pragma once

#include <filesystem>
#include <vector>

#include "specmine/corpus.hpp"
#include "specmine/distance.hpp"

namespace specmine {

// A set of related (non-sentinel) terms; clusters may overlap.
using TermCluster = TokenSet;

struct DacConfig {
  double alpha = 0.75;    // blend weight (the matrix passed in must use it)
  double beta = 0.40;     // intra-trace threshold
  double epsilon = 0.50;  // DBSCAN neighborhood radius
  int min_samples = 2;
};

// Connected components (size >= 2) of the graph over the trace's unique
// non-sentinel tokens with an edge wherever d(u,v) < beta.
std::set<TokenSet> intra_trace_clusters(const Trace& t, const DistanceMatrix& d, double beta);

// One point per (trace, intra-trace cluster) pair: the intersection of the
// trace's unique tokens with the cluster. Empty and singleton intersections
// are dropped; duplicate sets are kept as distinct points (multiplicity
// matters to DBSCAN density).
struct ReducedTrace {
  TokenSet tokens;
  int trace_index = 0;    // corpus iteration order
  int cluster_index = 0;  // index into the pooled cluster list
};
std::vector<ReducedTrace> reduced_traces(const Corpus& c, const std::vector<TokenSet>& clusters);

// Classic DBSCAN under Jaccard distance (neighborhood: distance <= epsilon,
// the point itself included in the count). Expansion proceeds in index
// order; noise is discarded; each cluster is returned as the union of its
// member sets, in discovery order.
std::vector<int> dbscan_labels(const std::vector<TokenSet>& points, double epsilon,
                               int min_samples);
std::vector<TermCluster> dbscan(const std::vector<TokenSet>& points, double epsilon,
                                int min_samples);

// Full Domain-Adapted Clustering pass: intra-trace clusters pooled across
// all traces (deduplicated), reduced traces, DBSCAN, then the resulting
// clusters deduplicated as sets and sorted.
std::vector<TermCluster> run_dac(const Corpus& c, const DistanceMatrix& d, const DacConfig& cfg);

// Line-delimited records {"cluster_id": k, "terms": [...]}.
void save_clusters(const std::vector<TermCluster>& clusters, const std::filesystem::path& path);
std::vector<TermCluster> load_clusters(const std::filesystem::path& path);

}  // namespace specmine
