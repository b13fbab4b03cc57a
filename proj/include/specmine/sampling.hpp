#pragma once

#include <cstdint>
#include <string>

#include "specmine/corpus.hpp"

namespace specmine {

enum class SamplerKind { Diversity, Random, None };

std::string to_string(SamplerKind k);
SamplerKind sampler_kind_from_string(std::string_view s);

struct SamplerConfig {
  SamplerKind kind = SamplerKind::Diversity;
  int samples_per_procedure = 10;
  std::uint64_t seed = 0;  // Random only
};

// 1 - |a∩b| / |a∪b|; 0 when both sets are empty.
double jaccard_distance(const TokenSet& a, const TokenSet& b);

// Greedy per-procedure selection: seed with the group's first stored trace,
// then repeatedly add the trace maximizing the mean Jaccard distance (over
// unique-token sets) to the current choices. The scan uses >= so the last
// maximal candidate in stored order wins, and a candidate at distance 0 from
// every choice is still selectable; both follow the pseudocode literally.
Corpus diversity_sample(const Corpus& c, const SamplerConfig& cfg);

// Uniform without replacement per group, deterministic for a fixed seed;
// selected traces keep their stored relative order.
Corpus random_sample(const Corpus& c, const SamplerConfig& cfg);

// Dispatch on cfg.kind; None is the identity.
Corpus sample(const Corpus& c, const SamplerConfig& cfg);

}  // namespace specmine
