#include "specmine/sampling.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "specmine/seed.hpp"

namespace specmine {

std::string to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::Diversity: return "diversity";
    case SamplerKind::Random: return "random";
    case SamplerKind::None: return "none";
  }
  return "?";
}

SamplerKind sampler_kind_from_string(std::string_view s) {
  if (s == "diversity") return SamplerKind::Diversity;
  if (s == "random") return SamplerKind::Random;
  if (s == "none") return SamplerKind::None;
  throw std::runtime_error("unknown sampler \"" + std::string(s) + "\"");
}

double jaccard_distance(const TokenSet& a, const TokenSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++inter;
      ++ia;
      ++ib;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

std::vector<Trace> diversity_select(const std::vector<Trace>& traces, int samples) {
  const int n = static_cast<int>(traces.size());
  if (n <= samples) return traces;

  std::vector<TokenSet> sets;
  sets.reserve(traces.size());
  for (const Trace& t : traces) sets.push_back(unique_tokens(t));

  std::vector<int> choices{0};
  std::vector<char> chosen(traces.size(), 0);
  chosen[0] = 1;
  while (static_cast<int>(choices.size()) < samples) {
    double best = 0.0;
    int best_i = -1;
    for (int i = 0; i < n; ++i) {
      if (chosen[i]) continue;
      double sum = 0.0;
      for (int c : choices) sum += jaccard_distance(sets[i], sets[c]);
      const double d = sum / static_cast<double>(choices.size());
      if (d >= best) {
        best = d;
        best_i = i;
      }
    }
    chosen[best_i] = 1;
    choices.push_back(best_i);
  }

  std::vector<Trace> out;
  out.reserve(choices.size());
  for (int i : choices) out.push_back(traces[i]);
  return out;
}

}  // namespace

Corpus diversity_sample(const Corpus& c, const SamplerConfig& cfg) {
  if (cfg.kind != SamplerKind::Diversity) throw std::runtime_error("sampler config is not Diversity");
  if (cfg.samples_per_procedure < 1) throw std::runtime_error("samples_per_procedure must be >= 1");
  Corpus out;
  for (const auto& [id, traces] : c.groups())
    for (Trace& t : diversity_select(traces, cfg.samples_per_procedure)) out.add(std::move(t));
  return out;
}

Corpus random_sample(const Corpus& c, const SamplerConfig& cfg) {
  if (cfg.kind != SamplerKind::Random) throw std::runtime_error("sampler config is not Random");
  if (cfg.samples_per_procedure < 1) throw std::runtime_error("samples_per_procedure must be >= 1");
  Corpus out;
  for (const auto& [id, traces] : c.groups()) {
    const int n = static_cast<int>(traces.size());
    if (n <= cfg.samples_per_procedure) {
      for (const Trace& t : traces) out.add(t);
      continue;
    }
    // Per-group stream so results do not depend on group visit order.
    std::mt19937_64 rng(split_seed(cfg.seed, "sample:" + id));
    std::vector<int> idx(traces.size());
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < cfg.samples_per_procedure; ++i) {
      std::uniform_int_distribution<int> pick(i, n - 1);
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
    }
    idx.resize(static_cast<std::size_t>(cfg.samples_per_procedure));
    std::sort(idx.begin(), idx.end());
    for (int i : idx) out.add(traces[static_cast<std::size_t>(i)]);
  }
  return out;
}

Corpus sample(const Corpus& c, const SamplerConfig& cfg) {
  switch (cfg.kind) {
    case SamplerKind::Diversity: return diversity_sample(c, cfg);
    case SamplerKind::Random: return random_sample(c, cfg);
    case SamplerKind::None: return c;
  }
  throw std::runtime_error("unknown sampler kind");
}

}  // namespace specmine
