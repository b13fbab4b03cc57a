#include "specmine/distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace specmine {

double DistanceMatrix::at(std::string_view a, std::string_view b) const {
  const int i = vocab.index_of(a);
  const int j = vocab.index_of(b);
  if (i < 0 || j < 0)
    throw std::runtime_error("token not in distance matrix vocabulary: " +
                             std::string(i < 0 ? a : b));
  return entries(i, j);
}

void DistanceMatrix::validate() const {
  const int n = vocab.size();
  if (entries.rows() != n || entries.cols() != n)
    throw std::runtime_error("distance matrix dimension does not match vocabulary");
  for (int i = 0; i < n; ++i) {
    if (entries(i, i) != 0.0) throw std::runtime_error("distance matrix diagonal is not zero");
    for (int j = 0; j < n; ++j) {
      const double v = entries(i, j);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw std::runtime_error("distance matrix entry outside [0,1]");
      if (entries(i, j) != entries(j, i)) throw std::runtime_error("distance matrix not symmetric");
    }
  }
}

Eigen::MatrixXd cooccurrence_counts(const Corpus& c, const Vocabulary& vocab, int window) {
  if (window < 1) throw std::runtime_error("co-occurrence window must be >= 1");
  const int n = vocab.size();
  Eigen::MatrixXd follows = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> in_window;
  for (const Trace* t : c.all_traces()) {
    std::vector<int> ids(t->tokens.size());
    for (std::size_t i = 0; i < t->tokens.size(); ++i) ids[i] = vocab.index_of(t->tokens[i].text);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] < 0) continue;
      in_window.clear();
      const std::size_t end = std::min(ids.size(), i + 1 + static_cast<std::size_t>(window));
      for (std::size_t j = i + 1; j < end; ++j)
        if (ids[j] >= 0) in_window.push_back(ids[j]);
      std::sort(in_window.begin(), in_window.end());
      in_window.erase(std::unique(in_window.begin(), in_window.end()), in_window.end());
      for (int b : in_window) follows(ids[i], b) += 1.0;
    }
  }
  return follows;
}

DistanceMatrix cooccurrence_distance_matrix(const Corpus& c, const Vocabulary& vocab, int window) {
  const int n = vocab.size();
  Eigen::VectorXd occurrences = Eigen::VectorXd::Zero(n);
  for (const Trace* t : c.all_traces())
    for (const Token& tok : t->tokens) {
      const int id = vocab.index_of(tok.text);
      if (id >= 0) occurrences(id) += 1.0;
    }
  for (int i = 0; i < n; ++i)
    if (occurrences(i) == 0.0)
      throw std::runtime_error("vocabulary token has zero occurrences in corpus: " + vocab[i].text);

  const Eigen::MatrixXd follows = cooccurrence_counts(c, vocab, window);
  DistanceMatrix m;
  m.vocab = vocab;
  m.entries = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double fwd = follows(i, j) / occurrences(i);
      const double bwd = follows(j, i) / occurrences(j);
      const double d = ((1.0 - fwd) + (1.0 - bwd)) / 2.0;
      m.entries(i, j) = d;
      m.entries(j, i) = d;
    }
  }
  return m;
}

DistanceMatrix blend(const DistanceMatrix& a, const DistanceMatrix& b, double alpha) {
  if (!(a.vocab == b.vocab))
    throw std::runtime_error("cannot blend distance matrices over different vocabularies");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::runtime_error("alpha must be in [0,1]");
  DistanceMatrix m;
  m.vocab = a.vocab;
  m.entries = alpha * a.entries + (1.0 - alpha) * b.entries;
  return m;
}

std::string format_double(double v) {
  char buf[64];
  // Shortest representation that survives the round trip.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void save_matrix(const DistanceMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix file " + path.string());
  const int n = m.vocab.size();
  out << n << '\n';
  for (int i = 0; i < n; ++i) out << escape_token(m.vocab[i].text) << '\n';
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (j > 0) out << ' ';
      out << format_double(m.entries(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failure on " + path.string());
}

DistanceMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file " + path.string());
  int n = 0;
  if (!(in >> n) || n < 0) throw std::runtime_error("bad matrix header in " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<Token> tokens;
  tokens.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated vocabulary in " + path.string());
    tokens.push_back(parse_token(unescape_token(line)));
  }
  DistanceMatrix m;
  m.vocab = Vocabulary(std::move(tokens));
  if (m.vocab.size() != n)
    throw std::runtime_error("duplicate vocabulary entries in " + path.string());
  m.entries = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double v = 0.0;
      if (!(in >> v)) throw std::runtime_error("truncated matrix rows in " + path.string());
      m.entries(i, j) = v;
      m.entries(j, i) = v;
    }
  }
  return m;
}

}  // namespace specmine
