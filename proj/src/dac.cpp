#include "specmine/dac.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "specmine/sampling.hpp"

namespace specmine {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(b)] = a;
  }
};

}  // namespace

std::set<TokenSet> intra_trace_clusters(const Trace& t, const DistanceMatrix& d, double beta) {
  std::vector<Token> terms;
  for (const Token& tok : unique_tokens(t))
    if (!is_sentinel(tok)) terms.push_back(tok);

  std::vector<int> ids(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    ids[i] = d.vocab.index_of(terms[i].text);
    if (ids[i] < 0)
      throw std::runtime_error("trace token missing from distance matrix: " + terms[i].text);
  }

  UnionFind uf(static_cast<int>(terms.size()));
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (d.entries(ids[i], ids[j]) < beta) uf.unite(static_cast<int>(i), static_cast<int>(j));

  std::map<int, TokenSet> components;
  for (std::size_t i = 0; i < terms.size(); ++i)
    components[uf.find(static_cast<int>(i))].insert(terms[i]);

  std::set<TokenSet> out;
  for (auto& [root, comp] : components)
    if (comp.size() >= 2) out.insert(std::move(comp));
  return out;
}

std::vector<ReducedTrace> reduced_traces(const Corpus& c, const std::vector<TokenSet>& clusters) {
  std::vector<ReducedTrace> out;
  int trace_index = 0;
  for (const Trace* t : c.all_traces()) {
    const TokenSet uniq = unique_tokens(*t);
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      TokenSet inter;
      std::set_intersection(uniq.begin(), uniq.end(), clusters[k].begin(), clusters[k].end(),
                            std::inserter(inter, inter.begin()));
      if (inter.size() >= 2)
        out.push_back({std::move(inter), trace_index, static_cast<int>(k)});
    }
    ++trace_index;
  }
  return out;
}

std::vector<int> dbscan_labels(const std::vector<TokenSet>& points, double epsilon,
                               int min_samples) {
  if (points.empty()) throw std::runtime_error("dbscan needs a non-empty point list");
  const int n = static_cast<int>(points.size());

  // Duplicate sets are frequent; compute Jaccard only between distinct sets.
  std::map<TokenSet, int> unique_ids;
  std::vector<int> uid(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    uid[i] = unique_ids.emplace(points[i], static_cast<int>(unique_ids.size())).first->second;
  const int m = static_cast<int>(unique_ids.size());
  std::vector<const TokenSet*> unique_sets(static_cast<std::size_t>(m));
  for (const auto& [set, id] : unique_ids) unique_sets[static_cast<std::size_t>(id)] = &set;
  Eigen::MatrixXd dist(m, m);
  for (int a = 0; a < m; ++a) {
    dist(a, a) = 0.0;
    for (int b = a + 1; b < m; ++b) {
      const double d = jaccard_distance(*unique_sets[static_cast<std::size_t>(a)],
                                        *unique_sets[static_cast<std::size_t>(b)]);
      dist(a, b) = d;
      dist(b, a) = d;
    }
  }

  auto neighbors = [&](int p) {
    std::vector<int> out;
    for (int q = 0; q < n; ++q)
      if (dist(uid[static_cast<std::size_t>(p)], uid[static_cast<std::size_t>(q)]) <= epsilon)
        out.push_back(q);
    return out;
  };

  constexpr int kUnvisited = -2;
  constexpr int kNoise = -1;
  std::vector<int> label(points.size(), kUnvisited);
  int next_cluster = 0;
  for (int p = 0; p < n; ++p) {
    if (label[static_cast<std::size_t>(p)] != kUnvisited) continue;
    std::vector<int> nb = neighbors(p);
    if (static_cast<int>(nb.size()) < min_samples) {
      label[static_cast<std::size_t>(p)] = kNoise;
      continue;
    }
    const int cluster = next_cluster++;
    label[static_cast<std::size_t>(p)] = cluster;
    std::deque<int> seeds(nb.begin(), nb.end());
    while (!seeds.empty()) {
      const int q = seeds.front();
      seeds.pop_front();
      if (label[static_cast<std::size_t>(q)] == kNoise) label[static_cast<std::size_t>(q)] = cluster;
      if (label[static_cast<std::size_t>(q)] != kUnvisited) continue;
      label[static_cast<std::size_t>(q)] = cluster;
      std::vector<int> qn = neighbors(q);
      if (static_cast<int>(qn.size()) >= min_samples)
        for (int r : qn) seeds.push_back(r);
    }
  }
  return label;
}

std::vector<TermCluster> dbscan(const std::vector<TokenSet>& points, double epsilon,
                                int min_samples) {
  const std::vector<int> label = dbscan_labels(points, epsilon, min_samples);
  int clusters = 0;
  for (int l : label) clusters = std::max(clusters, l + 1);
  std::vector<TermCluster> out(static_cast<std::size_t>(clusters));
  for (std::size_t i = 0; i < points.size(); ++i)
    if (label[i] >= 0)
      out[static_cast<std::size_t>(label[i])].insert(points[i].begin(), points[i].end());
  return out;
}

std::vector<TermCluster> run_dac(const Corpus& c, const DistanceMatrix& d, const DacConfig& cfg) {
  std::set<TokenSet> pooled;
  for (const Trace* t : c.all_traces()) {
    std::set<TokenSet> per_trace = intra_trace_clusters(*t, d, cfg.beta);
    pooled.insert(per_trace.begin(), per_trace.end());
  }
  if (pooled.empty()) return {};

  const std::vector<TokenSet> clusters(pooled.begin(), pooled.end());
  std::vector<TokenSet> points;
  for (const ReducedTrace& r : reduced_traces(c, clusters)) points.push_back(r.tokens);
  if (points.empty()) return {};

  std::set<TermCluster> dedup;
  for (TermCluster& tc : dbscan(points, cfg.epsilon, cfg.min_samples)) dedup.insert(std::move(tc));
  return std::vector<TermCluster>(dedup.begin(), dedup.end());
}

void save_clusters(const std::vector<TermCluster>& clusters, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cluster file " + path.string());
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    nlohmann::json rec;
    rec["cluster_id"] = k;
    auto& arr = rec["terms"] = nlohmann::json::array();
    for (const Token& t : clusters[k]) arr.push_back(t.text);
    out << rec.dump() << '\n';
  }
  if (!out) throw std::runtime_error("write failure on " + path.string());
}

std::vector<TermCluster> load_clusters(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cluster file " + path.string());
  std::vector<TermCluster> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    try {
      nlohmann::json rec = nlohmann::json::parse(line);
      TermCluster cluster;
      for (const auto& item : rec.at("terms")) cluster.insert(parse_token(item.get<std::string>()));
      if (cluster.size() < 2) throw std::runtime_error("cluster needs at least 2 terms");
      out.push_back(std::move(cluster));
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace specmine
