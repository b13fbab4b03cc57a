#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "specmine/corpus.hpp"
#include "specmine/dac.hpp"

namespace specmine {

// A trace filtered to one cluster's vocabulary, sentinels re-attached.
struct ProjectedTrace {
  std::vector<Token> tokens;
  int cluster_id = -1;
  std::string procedure_id;

  bool operator==(const ProjectedTrace& o) const { return tokens == o.tokens; }
};

// Order-preserving filter keeping the cluster's terms, with $START/$END
// re-attached at the ends. Empty when no cluster term survives.
std::optional<ProjectedTrace> project(const Trace& t, const TermCluster& cluster);

// Nondeterministic finite automaton; k-Tails merging can produce NFAs.
// States are 0..state_count-1 with 0 the initial state after renumbering.
struct Fsa {
  int state_count = 0;
  int initial = 0;
  std::set<int> accepting;
  // state -> label -> successor set
  std::vector<std::map<std::string, std::set<int>>> delta;

  bool accepts(const std::vector<std::string>& labels) const;
  bool accepts(const std::vector<Token>& tokens) const;
  std::size_t transition_count() const;
};

// Prefix tree acceptor over the token sequences, then iterated merging of
// states with equal tail sets until a fixed point. The tail set of a state
// holds every label string of length exactly k along a path from it, plus
// every shorter string along a path ending in an accepting state; tails are
// recomputed on the current (partially merged) automaton each round.
Fsa build_pta(const std::vector<ProjectedTrace>& traces);
Fsa ktails(const std::vector<ProjectedTrace>& traces, int k);

// First-order probabilistic sequence model with token-labeled states;
// maximum-likelihood transition estimates from adjacent-pair counts.
struct SeqModel {
  std::map<std::string, std::map<std::string, double>> trans;
  std::map<std::string, std::map<std::string, long>> counts;

  double log_likelihood(const std::vector<ProjectedTrace>& traces) const;
};
SeqModel fit_seq_model(const std::vector<ProjectedTrace>& traces);

// DOT renderings with deterministic node ordering. FSA edges are labeled
// with tokens, sequence-model edges with probabilities to 3 decimals.
std::string export_dot(const Fsa& fsa);
std::string export_dot(const SeqModel& model);

// Projection of a whole corpus onto each cluster; empty projections are
// excluded, and for miners that want it the result can be deduplicated.
std::vector<ProjectedTrace> project_corpus(const Corpus& c, const TermCluster& cluster,
                                           int cluster_id);
std::vector<ProjectedTrace> dedup_traces(const std::vector<ProjectedTrace>& traces);

}  // namespace specmine
