#include "specmine/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "specmine/seed.hpp"

namespace specmine {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

std::vector<std::string> subword_ngrams(std::string_view token_text, int ngram_min, int ngram_max) {
  std::string form = "<" + escape_token(token_text) + ">";
  std::vector<std::string> grams;
  const int len = static_cast<int>(form.size());
  for (int n = ngram_min; n <= ngram_max; ++n)
    for (int i = 0; i + n <= len; ++i) grams.push_back(form.substr(static_cast<std::size_t>(i), static_cast<std::size_t>(n)));
  return grams;
}

SgnsModel::SgnsModel(std::vector<std::string> words, std::vector<double> counts,
                     const EmbeddingConfig& cfg)
    : words_(std::move(words)) {
  if (words_.size() < 2) throw std::runtime_error("embedding vocabulary must have at least 2 tokens");
  if (counts.size() != words_.size()) throw std::runtime_error("word/count size mismatch");
  if (cfg.dim < 2) throw std::runtime_error("embedding dim must be >= 2");
  if (cfg.ngram_min > cfg.ngram_max) throw std::runtime_error("ngram_min must be <= ngram_max");

  for (std::size_t i = 0; i < words_.size(); ++i) word_index_[words_[i]] = static_cast<int>(i);

  const int n_words = static_cast<int>(words_.size());
  constituents_.resize(words_.size());
  if (cfg.subword) {
    std::set<std::string> all;
    std::vector<std::vector<std::string>> per_word(words_.size());
    for (std::size_t w = 0; w < words_.size(); ++w) {
      per_word[w] = subword_ngrams(words_[w], cfg.ngram_min, cfg.ngram_max);
      all.insert(per_word[w].begin(), per_word[w].end());
    }
    ngrams_.assign(all.begin(), all.end());
    std::map<std::string, int, std::less<>> gram_index;
    for (std::size_t g = 0; g < ngrams_.size(); ++g) gram_index[ngrams_[g]] = static_cast<int>(g);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      constituents_[w].push_back(static_cast<int>(w));
      for (const std::string& g : per_word[w]) constituents_[w].push_back(n_words + gram_index[g]);
    }
  } else {
    for (std::size_t w = 0; w < words_.size(); ++w) constituents_[w].push_back(static_cast<int>(w));
  }

  negative_cdf_.resize(words_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] <= 0.0) throw std::runtime_error("word count must be positive");
    acc += std::pow(counts[i], 0.75);
    negative_cdf_[i] = acc;
  }
  for (double& v : negative_cdf_) v /= acc;

  const int rows_in = n_words + static_cast<int>(ngrams_.size());
  input_.setZero(rows_in, cfg.dim);
  output_.setZero(n_words, cfg.dim);
  std::mt19937_64 rng(split_seed(cfg.seed, "sgns-init"));
  std::uniform_real_distribution<double> u(-0.5 / cfg.dim, 0.5 / cfg.dim);
  for (int r = 0; r < rows_in; ++r)
    for (int d = 0; d < cfg.dim; ++d) input_(r, d) = u(rng);
}

int SgnsModel::word_index(std::string_view text) const {
  auto it = word_index_.find(text);
  return it == word_index_.end() ? -1 : it->second;
}

Eigen::VectorXd SgnsModel::representation(int word) const {
  const auto& rows = constituents_[static_cast<std::size_t>(word)];
  Eigen::VectorXd h = Eigen::VectorXd::Zero(input_.cols());
  for (int r : rows) h += input_.row(r);
  return h / static_cast<double>(rows.size());
}

double SgnsModel::pair_loss(int center, int context, const std::vector<int>& negatives) const {
  const Eigen::VectorXd h = representation(center);
  double loss = -std::log(sigmoid(output_.row(context).dot(h)));
  for (int n : negatives) loss += -std::log(sigmoid(-output_.row(n).dot(h)));
  return loss;
}

void SgnsModel::pair_gradients(int center, int context, const std::vector<int>& negatives,
                               Eigen::MatrixXd& grad_input, Eigen::MatrixXd& grad_output) const {
  grad_input.setZero(input_.rows(), input_.cols());
  grad_output.setZero(output_.rows(), output_.cols());
  const Eigen::VectorXd h = representation(center);
  Eigen::VectorXd grad_h = Eigen::VectorXd::Zero(input_.cols());

  const double coeff_pos = sigmoid(output_.row(context).dot(h)) - 1.0;
  grad_output.row(context) += coeff_pos * h.transpose();
  grad_h += coeff_pos * output_.row(context).transpose();
  for (int n : negatives) {
    const double coeff = sigmoid(output_.row(n).dot(h));
    grad_output.row(n) += coeff * h.transpose();
    grad_h += coeff * output_.row(n).transpose();
  }

  const auto& rows = constituents_[static_cast<std::size_t>(center)];
  const double scale = 1.0 / static_cast<double>(rows.size());
  for (int r : rows) grad_input.row(r) += scale * grad_h.transpose();
}

void SgnsModel::train_pair(int center, int context, const std::vector<int>& negatives, double lr) {
  const Eigen::VectorXd h = representation(center);
  Eigen::VectorXd grad_h = Eigen::VectorXd::Zero(input_.cols());

  const double coeff_pos = sigmoid(output_.row(context).dot(h)) - 1.0;
  grad_h += coeff_pos * output_.row(context).transpose();
  output_.row(context) -= lr * coeff_pos * h.transpose();
  for (int n : negatives) {
    const double coeff = sigmoid(output_.row(n).dot(h));
    grad_h += coeff * output_.row(n).transpose();
    output_.row(n) -= lr * coeff * h.transpose();
  }

  const auto& rows = constituents_[static_cast<std::size_t>(center)];
  const double scale = 1.0 / static_cast<double>(rows.size());
  for (int r : rows) input_.row(r) -= (lr * scale) * grad_h.transpose();
}

namespace {

int sample_negative(const std::vector<double>& cdf, double u) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return static_cast<int>(it - cdf.begin());
}

struct TraceIds {
  std::vector<int> ids;
};

void train_shard(SgnsModel& model, const std::vector<TraceIds>& shard, const EmbeddingConfig& cfg,
                 std::uint64_t seed, std::atomic<long long>& progress, long long total_positions) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> window_draw(1, cfg.window);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> negatives;
  const double lr0 = cfg.learning_rate;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (const TraceIds& trace : shard) {
      const auto& ids = trace.ids;
      const int len = static_cast<int>(ids.size());
      for (int i = 0; i < len; ++i) {
        const long long done = progress.fetch_add(1, std::memory_order_relaxed);
        const double frac = static_cast<double>(done) / static_cast<double>(total_positions);
        const double lr = lr0 * std::max(1e-4, 1.0 - frac);
        const int b = window_draw(rng);
        for (int j = std::max(0, i - b); j <= std::min(len - 1, i + b); ++j) {
          if (j == i) continue;
          const int context = ids[static_cast<std::size_t>(j)];
          negatives.clear();
          for (int d = 0; d < cfg.negatives; ++d) {
            const int neg = sample_negative(model.negative_cdf(), unit(rng));
            if (neg == context) continue;  // fewer negatives on collision
            negatives.push_back(neg);
          }
          model.train_pair(ids[static_cast<std::size_t>(i)], context, negatives, lr);
        }
      }
    }
  }
}

}  // namespace

Embedding train(const Corpus& c, const EmbeddingConfig& cfg) {
  if (c.empty()) throw std::runtime_error("cannot train an embedding on an empty corpus");
  if (cfg.window < 1 || cfg.negatives < 1 || cfg.epochs < 1 || cfg.learning_rate <= 0.0)
    throw std::runtime_error("bad embedding configuration");

  const Vocabulary vocab = Vocabulary::of_corpus(c);
  std::vector<std::string> words;
  words.reserve(static_cast<std::size_t>(vocab.size()));
  for (const Token& t : vocab.tokens()) words.push_back(t.text);

  std::vector<double> counts(words.size(), 0.0);
  std::vector<TraceIds> traces;
  for (const Trace* t : c.all_traces()) {
    TraceIds ti;
    ti.ids.reserve(t->tokens.size());
    for (const Token& tok : t->tokens) {
      const int id = vocab.index_of(tok.text);
      ti.ids.push_back(id);
      counts[static_cast<std::size_t>(id)] += 1.0;
    }
    traces.push_back(std::move(ti));
  }

  SgnsModel model(words, counts, cfg);

  long long positions_per_epoch = 0;
  for (const TraceIds& t : traces) positions_per_epoch += static_cast<long long>(t.ids.size());
  const long long total_positions = positions_per_epoch * cfg.epochs;
  std::atomic<long long> progress{0};

  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    train_shard(model, traces, cfg, split_seed(cfg.seed, "sgns-worker-0"), progress, total_positions);
  } else {
    std::vector<std::vector<TraceIds>> shards(static_cast<std::size_t>(workers));
    for (std::size_t i = 0; i < traces.size(); ++i)
      shards[i % static_cast<std::size_t>(workers)].push_back(traces[i]);
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w)
      threads.emplace_back([&, w] {
        train_shard(model, shards[static_cast<std::size_t>(w)], cfg,
                    split_seed(cfg.seed, "sgns-worker-" + std::to_string(w)), progress,
                    total_positions);
      });
    for (std::thread& t : threads) t.join();
  }

  Embedding e;
  e.config = cfg;
  for (int w = 0; w < model.word_count(); ++w) e.vectors[words[static_cast<std::size_t>(w)]] = model.representation(w);
  if (cfg.subword) {
    const int n_words = model.word_count();
    for (std::size_t g = 0; g < model.ngrams().size(); ++g)
      e.ngram_vectors[model.ngrams()[g]] = model.input().row(n_words + static_cast<int>(g));
  }
  return e;
}

Eigen::VectorXd Embedding::vector_for(std::string_view token_text) const {
  auto it = vectors.find(std::string(token_text));
  if (it != vectors.end()) return it->second;
  if (!config.subword)
    throw std::runtime_error("token has no trained vector: " + std::string(token_text));
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(config.dim);
  int known = 0;
  for (const std::string& g : subword_ngrams(token_text, config.ngram_min, config.ngram_max)) {
    auto git = ngram_vectors.find(g);
    if (git != ngram_vectors.end()) {
      sum += git->second;
      ++known;
    }
  }
  if (known == 0)
    throw std::runtime_error("token has no trained vector and no known n-grams: " +
                             std::string(token_text));
  return sum / static_cast<double>(known);
}

DistanceMatrix embedding_distance_matrix(const std::map<std::string, Eigen::VectorXd>& vectors,
                                         const Vocabulary& vocab) {
  const int n = vocab.size();
  std::vector<const Eigen::VectorXd*> v(static_cast<std::size_t>(n));
  std::vector<double> norm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto it = vectors.find(vocab[i].text);
    if (it == vectors.end())
      throw std::runtime_error("vocabulary token has no vector: " + vocab[i].text);
    v[static_cast<std::size_t>(i)] = &it->second;
    norm[static_cast<std::size_t>(i)] = it->second.norm();
    if (norm[static_cast<std::size_t>(i)] == 0.0)
      throw std::runtime_error("zero-norm vector for token: " + vocab[i].text);
  }
  DistanceMatrix m;
  m.vocab = vocab;
  m.entries = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double cos = v[static_cast<std::size_t>(i)]->dot(*v[static_cast<std::size_t>(j)]) /
                         (norm[static_cast<std::size_t>(i)] * norm[static_cast<std::size_t>(j)]);
      const double d = std::clamp((1.0 - cos) / 2.0, 0.0, 1.0);
      m.entries(i, j) = d;
      m.entries(j, i) = d;
    }
  }
  return m;
}

DistanceMatrix embedding_distance_matrix(const Embedding& e, const Vocabulary& vocab) {
  return embedding_distance_matrix(e.vectors, vocab);
}

void save_vectors(const std::map<std::string, Eigen::VectorXd>& vectors,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write vector file " + path.string());
  for (const auto& [text, vec] : vectors) {
    out << escape_token(text);
    for (Eigen::Index d = 0; d < vec.size(); ++d) out << ' ' << format_double(vec(d));
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failure on " + path.string());
}

std::map<std::string, Eigen::VectorXd> load_vectors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vector file " + path.string());
  std::map<std::string, Eigen::VectorXd> vectors;
  std::string line;
  Eigen::Index dim = -1;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string escaped;
    ls >> escaped;
    std::vector<double> values;
    double v = 0.0;
    while (ls >> v) values.push_back(v);
    if (values.empty())
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": no vector values");
    if (dim < 0) dim = static_cast<Eigen::Index>(values.size());
    if (dim != static_cast<Eigen::Index>(values.size()))
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": inconsistent vector length");
    Eigen::VectorXd vec(dim);
    for (Eigen::Index d = 0; d < dim; ++d) vec(d) = values[static_cast<std::size_t>(d)];
    vectors[unescape_token(escaped)] = std::move(vec);
  }
  if (vectors.empty()) throw std::runtime_error(path.string() + ": no vectors");
  return vectors;
}

}  // namespace specmine
