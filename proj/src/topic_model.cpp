// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "topic_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "error.hpp"
#include "file_util.hpp"

namespace logoscope {

namespace {

// Portable uniform double in [0, 1).
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t draw(std::mt19937_64& rng, const std::vector<double>& cumulative) {
  const double u = unit(rng) * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

std::vector<std::uint32_t> to_ids(const std::vector<std::string>& doc, const Vocabulary& vocab) {
  std::vector<std::uint32_t> ids;
  ids.reserve(doc.size());
  for (const auto& t : doc) {
    if (const auto id = vocab.id(t); id >= 0) ids.push_back(static_cast<std::uint32_t>(id));
  }
  return ids;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], static_cast<std::uint32_t>(i)).second) {
      throw Error(ErrorCode::kInvalidArgument, "DuplicateTerm", "duplicate vocabulary term '" + terms_[i] + "'");
    }
  }
}

std::int64_t Vocabulary::id(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs, const VocabularyOptions& options) {
  std::unordered_map<std::string, std::size_t> df;
  std::vector<std::string> order;
  for (const auto& doc : docs) {
    std::unordered_set<std::string_view> seen;
    for (const auto& t : doc) {
      if (!seen.insert(t).second) continue;
      auto [it, inserted] = df.emplace(t, 0);
      if (inserted) order.push_back(t);
      ++it->second;
    }
  }
  const double max_df = options.max_df_ratio * static_cast<double>(docs.size());
  std::vector<std::string> terms;
  for (const auto& t : order) {
    const std::size_t n = df.at(t);
    if (n < options.min_df || static_cast<double>(n) > max_df) continue;
    if (options.stopwords.contains(t)) continue;
    terms.push_back(t);
  }
  if (terms.empty()) throw Error(ErrorCode::kInvalidArgument, "EmptyVocabulary", "no term survives vocabulary filtering");
  return Vocabulary(std::move(terms));
}

TopicModel::TopicModel(std::size_t k, Vocabulary vocab, std::vector<double> topic_word, double alpha, double beta,
                       std::uint64_t seed, std::size_t iterations)
    : k_(k), vocab_(std::move(vocab)), topic_word_(std::move(topic_word)), alpha_(alpha), beta_(beta),
      seed_(seed), iterations_(iterations) {
  if (topic_word_.size() != k_ * vocab_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "DimensionMismatch", "topic_word size does not match K x V");
  }
}

std::vector<std::pair<std::string, double>> TopicModel::top_words(std::size_t topic, std::size_t n) const {
  if (topic >= k_) throw Error(ErrorCode::kInvalidArgument, "IndexOutOfRange", "topic index out of range");
  std::vector<std::size_t> ids(vocab_.size());
  std::iota(ids.begin(), ids.end(), 0);
  n = std::min(n, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n), ids.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double pa = phi(topic, a), pb = phi(topic, b);
                      return pa != pb ? pa > pb : a < b;
                    });
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(vocab_.term(ids[i]), phi(topic, ids[i]));
  return out;
}

InferResult TopicModel::infer(const std::vector<std::string>& document, std::size_t iterations,
                              std::uint64_t seed) const {
  InferResult result;
  const auto words = to_ids(document, vocab_);
  if (words.empty()) {
    result.proportions.assign(k_, 1.0 / static_cast<double>(k_));
    result.out_of_vocabulary = true;
    return result;
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> z(words.size());
  std::vector<std::size_t> n_k(k_, 0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    z[i] = static_cast<std::size_t>(rng() % k_);
    ++n_k[z[i]];
  }
  std::vector<double> cumulative(k_);
  for (std::size_t it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      --n_k[z[i]];
      double acc = 0.0;
      for (std::size_t t = 0; t < k_; ++t) {
        acc += (static_cast<double>(n_k[t]) + alpha_) * phi(t, words[i]);
        cumulative[t] = acc;
      }
      z[i] = draw(rng, cumulative);
      ++n_k[z[i]];
    }
  }
  const double denom = static_cast<double>(words.size()) + static_cast<double>(k_) * alpha_;
  result.proportions.resize(k_);
  for (std::size_t t = 0; t < k_; ++t) result.proportions[t] = (static_cast<double>(n_k[t]) + alpha_) / denom;
  return result;
}

TopicModel train_lda(const std::vector<std::vector<std::string>>& docs, const Vocabulary& vocab,
                     const LdaConfig& config, const GibbsObserver& observer) {
  const std::size_t k = config.k;
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "InvalidK", "K must be at least 2");
  if (docs.size() < k) {
    throw Error(ErrorCode::kInvalidArgument, "KTooLarge",
                "K=" + std::to_string(k) + " exceeds the number of documents (" + std::to_string(docs.size()) + ")");
  }
  if (vocab.size() == 0) throw Error(ErrorCode::kInvalidArgument, "EmptyVocabulary", "empty vocabulary");
  const double alpha = config.alpha > 0 ? config.alpha : 50.0 / static_cast<double>(k);
  const double beta = config.beta;
  const std::size_t v = vocab.size();
  const double v_beta = static_cast<double>(v) * beta;

  std::vector<std::vector<std::uint32_t>> words;
  words.reserve(docs.size());
  for (const auto& d : docs) words.push_back(to_ids(d, vocab));

  std::mt19937_64 rng(config.seed);
  std::vector<std::vector<std::uint32_t>> z(words.size());
  std::vector<std::uint32_t> n_dk(words.size() * k, 0);
  std::vector<std::uint32_t> n_wk(v * k, 0);
  std::vector<std::uint32_t> n_k(k, 0);
  std::size_t corpus_tokens = 0;
  for (std::size_t d = 0; d < words.size(); ++d) {
    z[d].resize(words[d].size());
    corpus_tokens += words[d].size();
    for (std::size_t i = 0; i < words[d].size(); ++i) {
      const auto t = static_cast<std::uint32_t>(rng() % k);
      z[d][i] = t;
      ++n_dk[d * k + t];
      ++n_wk[words[d][i] * k + t];
      ++n_k[t];
    }
  }

  auto report = [&](std::size_t iteration) {
    if (!observer) return;
    GibbsState s;
    s.iteration = iteration;
    s.corpus_tokens = corpus_tokens;
    s.topic_total = std::accumulate(n_k.begin(), n_k.end(), std::size_t{0});
    s.doc_topic_total = std::accumulate(n_dk.begin(), n_dk.end(), std::size_t{0});
    s.word_topic_total = std::accumulate(n_wk.begin(), n_wk.end(), std::size_t{0});
    s.n_k.assign(n_k.begin(), n_k.end());
    s.n_k_from_docs.assign(k, 0);
    s.n_k_from_words.assign(k, 0);
    for (std::size_t d = 0; d < words.size(); ++d) {
      std::size_t len = 0;
      for (std::size_t t = 0; t < k; ++t) {
        s.n_k_from_docs[t] += n_dk[d * k + t];
        len += n_dk[d * k + t];
      }
      if (len != words[d].size()) s.doc_lengths_match = false;
    }
    for (std::size_t w = 0; w < v; ++w) {
      for (std::size_t t = 0; t < k; ++t) s.n_k_from_words[t] += n_wk[w * k + t];
    }
    observer(s);
  };
  report(0);

  std::vector<double> cumulative(k);
  for (std::size_t it = 1; it <= config.iterations; ++it) {
    for (std::size_t d = 0; d < words.size(); ++d) {
      std::uint32_t* doc_counts = &n_dk[d * k];
      for (std::size_t i = 0; i < words[d].size(); ++i) {
        const std::uint32_t w = words[d][i];
        std::uint32_t* word_counts = &n_wk[w * k];
        const std::uint32_t old = z[d][i];
        --doc_counts[old];
        --word_counts[old];
        --n_k[old];
        double acc = 0.0;
        for (std::size_t t = 0; t < k; ++t) {
          acc += (doc_counts[t] + alpha) * (word_counts[t] + beta) / (n_k[t] + v_beta);
          cumulative[t] = acc;
        }
        const auto t = static_cast<std::uint32_t>(draw(rng, cumulative));
        z[d][i] = t;
        ++doc_counts[t];
        ++word_counts[t];
        ++n_k[t];
      }
    }
    report(it);
  }

  std::vector<double> topic_word(k * v);
  for (std::size_t t = 0; t < k; ++t) {
    const double denom = n_k[t] + v_beta;
    for (std::size_t w = 0; w < v; ++w) topic_word[t * v + w] = (n_wk[w * k + t] + beta) / denom;
  }
  return TopicModel(k, vocab, std::move(topic_word), alpha, beta, config.seed, config.iterations);
}

std::string TopicModel::serialize() const {
  std::string out = "logoscope-lda 1\n";
  char buf[64];
  out += std::to_string(k_) + ' ' + std::to_string(vocab_.size()) + ' ';
  std::snprintf(buf, sizeof buf, "%.17g %.17g ", alpha_, beta_);
  out += buf;
  out += std::to_string(seed_) + ' ' + std::to_string(iterations_) + '\n';
  for (const auto& t : vocab_.terms()) out += t + '\n';
  for (std::size_t t = 0; t < k_; ++t) {
    for (std::size_t w = 0; w < vocab_.size(); ++w) {
      std::snprintf(buf, sizeof buf, w == 0 ? "%.17g" : " %.17g", phi(t, w));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

TopicModel TopicModel::deserialize(std::string_view text) {
  auto bad = [](const std::string& what) { return Error(ErrorCode::kParse, "BadModel", "topic model: " + what); };
  const auto lines = split_lines(text);
  if (lines.size() < 2 || lines[0] != "logoscope-lda 1") throw bad("unsupported header");
  std::istringstream head(lines[1]);
  std::size_t k = 0, v = 0, iterations = 0;
  double alpha = 0, beta = 0;
  std::uint64_t seed = 0;
  if (!(head >> k >> v >> alpha >> beta >> seed >> iterations)) throw bad("malformed parameter line");
  if (lines.size() < 2 + v + k) throw bad("truncated file");
  std::vector<std::string> terms(lines.begin() + 2, lines.begin() + 2 + static_cast<std::ptrdiff_t>(v));
  std::vector<double> topic_word;
  topic_word.reserve(k * v);
  for (std::size_t t = 0; t < k; ++t) {
    std::istringstream row(lines[2 + v + t]);
    for (std::size_t w = 0; w < v; ++w) {
      double p = 0;
      if (!(row >> p)) throw bad("short matrix row " + std::to_string(t));
      topic_word.push_back(p);
    }
  }
  return TopicModel(k, Vocabulary(std::move(terms)), std::move(topic_word), alpha, beta, seed, iterations);
}

void TopicModel::save(const std::filesystem::path& path) const { write_file_atomic(path, serialize()); }

TopicModel TopicModel::load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kNotFound, "ModelMissing", "topic model not found: " + path.string());
  }
  return deserialize(read_file(path));
}

}  // namespace logoscope
