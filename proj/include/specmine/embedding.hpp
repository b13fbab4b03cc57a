#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "specmine/corpus.hpp"
#include "specmine/distance.hpp"

namespace specmine {

struct EmbeddingConfig {
  int dim = 64;
  int window = 5;          // context window (reduced uniformly per position)
  int negatives = 5;       // negatives per positive, unigram^(3/4) distribution
  int epochs = 25;
  double learning_rate = 0.05;  // linearly decayed over all updates
  bool subword = true;     // character n-gram composition on the input side
  int ngram_min = 3;
  int ngram_max = 6;
  std::uint64_t seed = 0;
  int workers = 1;         // 1 = bitwise deterministic; >1 = lock-free updates
};

// Character n-grams of a token's normalized word form: spaces become `#`,
// the form is wrapped in `<` and `>`.
std::vector<std::string> subword_ngrams(std::string_view token_text, int ngram_min, int ngram_max);

// Skip-gram parameters plus the gradient/loss math for one training sample.
// Exposed so the analytic gradients can be checked against finite
// differences; train() drives exactly this code.
class SgnsModel {
 public:
  SgnsModel(std::vector<std::string> words, std::vector<double> counts, const EmbeddingConfig& cfg);

  int word_count() const { return static_cast<int>(words_.size()); }
  int word_index(std::string_view text) const;  // -1 when absent
  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::vector<int>>& constituents() const { return constituents_; }
  const std::vector<std::string>& ngrams() const { return ngrams_; }

  Eigen::MatrixXd& input() { return input_; }    // rows: words then n-grams
  Eigen::MatrixXd& output() { return output_; }  // rows: words
  const Eigen::MatrixXd& input() const { return input_; }
  const Eigen::MatrixXd& output() const { return output_; }

  // Input representation of a word: mean of its constituent rows.
  Eigen::VectorXd representation(int word) const;

  // -log s(u_ctx . h) - sum_n log s(-u_n . h)
  double pair_loss(int center, int context, const std::vector<int>& negatives) const;
  void pair_gradients(int center, int context, const std::vector<int>& negatives,
                      Eigen::MatrixXd& grad_input, Eigen::MatrixXd& grad_output) const;
  void train_pair(int center, int context, const std::vector<int>& negatives, double lr);

  // Negative-sampling distribution: cumulative unigram^(3/4) weights.
  const std::vector<double>& negative_cdf() const { return negative_cdf_; }

 private:
  std::vector<std::string> words_;
  std::map<std::string, int, std::less<>> word_index_;
  std::vector<std::string> ngrams_;
  std::vector<std::vector<int>> constituents_;  // per word: input rows
  std::vector<double> negative_cdf_;
  Eigen::MatrixXd input_;
  Eigen::MatrixXd output_;
};

// Learned vectors for every corpus token (sentinels included). When the
// config enables subwords, tokens outside the training vocabulary can still
// be composed from their known n-grams.
struct Embedding {
  EmbeddingConfig config;
  std::map<std::string, Eigen::VectorXd> vectors;
  std::map<std::string, Eigen::VectorXd> ngram_vectors;  // empty when !subword

  // Training-vocabulary lookup, or n-gram composition for unseen tokens.
  Eigen::VectorXd vector_for(std::string_view token_text) const;
};

// Skip-gram with negative sampling over each trace as a sentence.
// Deterministic for a fixed seed with workers == 1.
Embedding train(const Corpus& c, const EmbeddingConfig& cfg);

// Matrix B: entries (1 - cosine_similarity) / 2; zero-norm vectors are an
// error (degenerate training run).
DistanceMatrix embedding_distance_matrix(const std::map<std::string, Eigen::VectorXd>& vectors,
                                         const Vocabulary& vocab);
DistanceMatrix embedding_distance_matrix(const Embedding& e, const Vocabulary& vocab);

// Text dump, one line per token: <token-with-spaces-escaped-as-#> <f1> ...
void save_vectors(const std::map<std::string, Eigen::VectorXd>& vectors,
                  const std::filesystem::path& path);
std::map<std::string, Eigen::VectorXd> load_vectors(const std::filesystem::path& path);

}  // namespace specmine
