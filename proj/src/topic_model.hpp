// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexicon.hpp"

namespace logoscope {

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const { return terms_.size(); }
  const std::string& term(std::size_t id) const { return terms_[id]; }
  const std::vector<std::string>& terms() const { return terms_; }
  // -1 when out of vocabulary.
  std::int64_t id(std::string_view term) const;

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

struct VocabularyOptions {
  std::size_t min_df = 5;
  double max_df_ratio = 0.5;
  StringSet stopwords;
};

// Terms kept in first-seen order. Throws EmptyVocabulary.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs, const VocabularyOptions& options);

struct LdaConfig {
  std::size_t k = 10;
  double alpha = 0.0;  // <= 0 means 50 / k
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::uint64_t seed = 1;
};

// Snapshot handed to an observer after each sweep.
struct GibbsState {
  std::size_t iteration = 0;
  std::size_t corpus_tokens = 0;           // sum of document lengths
  std::size_t topic_total = 0;             // sum over topics of n_k
  std::size_t doc_topic_total = 0;         // sum of n_dk
  std::size_t word_topic_total = 0;        // sum of n_wk
  std::vector<std::size_t> n_k;            // per-topic counter
  std::vector<std::size_t> n_k_from_docs;  // per-topic sum of n_dk over documents
  std::vector<std::size_t> n_k_from_words; // per-topic sum of n_wk over words
  bool doc_lengths_match = true;           // sum over topics of n_dk equals each document length
};

using GibbsObserver = std::function<void(const GibbsState&)>;

struct InferResult {
  std::vector<double> proportions;
  bool out_of_vocabulary = false;  // no known term; proportions are uniform
};

class TopicModel {
 public:
  TopicModel() = default;
  TopicModel(std::size_t k, Vocabulary vocab, std::vector<double> topic_word, double alpha, double beta,
             std::uint64_t seed, std::size_t iterations);

  std::size_t k() const { return k_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t iterations() const { return iterations_; }
  double phi(std::size_t topic, std::size_t word) const { return topic_word_[topic * vocab_.size() + word]; }
  const std::vector<double>& topic_word() const { return topic_word_; }

  // Highest-probability terms, ties by vocabulary order. Throws IndexOutOfRange.
  std::vector<std::pair<std::string, double>> top_words(std::size_t topic, std::size_t n) const;

  // Fold-in Gibbs sampling with topic_word held fixed.
  InferResult infer(const std::vector<std::string>& document, std::size_t iterations = 100,
                    std::uint64_t seed = 1) const;

  void save(const std::filesystem::path& path) const;
  static TopicModel load(const std::filesystem::path& path);  // ModelMissing / BadModel
  std::string serialize() const;
  static TopicModel deserialize(std::string_view text);

 private:
  std::size_t k_ = 0;
  Vocabulary vocab_;
  std::vector<double> topic_word_;  // k x V, row-major
  double alpha_ = 0.0;
  double beta_ = 0.0;
  std::uint64_t seed_ = 0;
  std::size_t iterations_ = 0;
};

// Collapsed Gibbs sampling. Out-of-vocabulary terms are ignored. Throws
// KTooLarge when there are fewer documents than topics.
TopicModel train_lda(const std::vector<std::vector<std::string>>& docs, const Vocabulary& vocab,
                     const LdaConfig& config, const GibbsObserver& observer = {});

}  // namespace logoscope
