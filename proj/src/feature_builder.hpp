// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <mutex>
#include <regex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aho_corasick.hpp"
#include "candidate_extractor.hpp"
#include "lexicon.hpp"
#include "tagger.hpp"
#include "topic_model.hpp"

namespace logoscope {

class AffixInventory {
 public:
  AffixInventory(std::vector<std::string> prefixes, std::vector<std::string> suffixes);

  // `[prefixes]` / `[suffixes]` sections holding quoted entries, in order.
  static AffixInventory parse(std::string_view text);
  static AffixInventory load(const std::filesystem::path& path);

  const std::vector<std::string>& prefixes() const { return prefixes_; }
  const std::vector<std::string>& suffixes() const { return suffixes_; }

  // An entry matches when the lowercased form starts (ends) with it, with at
  // least three code points left over. Suffixes are also tried on the form
  // stripped of a plural s/x.
  std::vector<bool> prefix_flags(std::string_view form) const;
  std::vector<bool> suffix_flags(std::string_view form) const;

 private:
  std::vector<std::string> prefixes_;
  std::vector<std::string> suffixes_;
  std::vector<std::u32string> prefix_cps_;
  std::vector<std::u32string> suffix_cps_;
};

inline constexpr std::array<std::string_view, 5> kLanguageFlags = {"fr", "en", "de", "es", "none"};

class LanguageRules {
 public:
  static LanguageRules parse(std::string_view text);
  static LanguageRules load(const std::filesystem::path& path);

  // fr, en, de, es, none.
  std::array<bool, 5> flags(std::string_view form) const;
  std::size_t size() const { return rules_.size(); }

 private:
  std::vector<std::pair<std::size_t, std::regex>> rules_;
};

struct ContainmentMatch {
  std::string contained_form;
  CharSpan span;  // code point offsets into the candidate surface

  friend bool operator==(const ContainmentMatch&, const ContainmentMatch&) = default;
};

struct ContainmentStats {
  std::vector<ContainmentMatch> matches;
  std::size_t count = 0;
  std::size_t max_len = 0;
  double coverage = 0.0;
};

// Multi-pattern automaton over the lowercased lexicon members of at least
// `min_length` code points.
class ContainmentIndex {
 public:
  static ContainmentIndex build(const StringSet& forms, std::size_t min_length = 3);
  ContainmentStats find(std::string_view surface) const;
  std::size_t pattern_count() const { return forms_.size(); }

 private:
  AhoCorasick<char32_t> automaton_;
  std::vector<std::string> forms_;
};

ContainmentStats contained_known_forms(std::string_view surface, const ContainmentIndex& index);

struct FeatureMask {
  bool formal = true;
  bool lex = true;
  bool theme = true;

  // "formal,lex,theme" (any non-empty subset, any order).
  static FeatureMask parse(std::string_view text);
  std::string str() const;
  friend bool operator==(const FeatureMask&, const FeatureMask&) = default;
};

inline constexpr std::size_t kFormalDimension = 10;
std::array<double, kFormalDimension> formal_features(const Candidate& candidate, std::size_t batch_tokens);
std::array<double, kFormalDimension> formal_features(const Candidate& candidate, const CorpusBatch& batch);
std::vector<std::string> formal_column_names();

struct FeatureResources {
  const AffixInventory* affixes = nullptr;
  const LanguageRules* languages = nullptr;
  const ContainmentIndex* containment = nullptr;
  const TopicModel* topics = nullptr;
  TagFn tagger;                            // lemmas for topic inference
  std::vector<std::string> journals;      // multi-hot column order
  bool sentence_context = false;          // concatenate sentences instead of paragraphs
  std::size_t infer_iterations = 100;
};

struct FeatureRow {
  std::int64_t wid = 0;
  std::string surface;
  FilterFlags flags;
  std::vector<double> values;
};

class FeatureBuilder {
 public:
  // Throws ModelMissing when the thematic group is requested without a model.
  FeatureBuilder(FeatureResources resources, FeatureMask mask);

  const FeatureMask& mask() const { return mask_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t dimension() const { return columns_.size(); }

  std::vector<double> lex_block(const Candidate& candidate) const;
  // Topic proportions of article-level maxima, context document, and
  // journal multi-hot.
  std::vector<double> thematic_block(const Candidate& candidate, const CorpusBatch& batch) const;
  std::vector<double> build(const Candidate& candidate, const CorpusBatch& batch) const;
  std::vector<double> build(const Candidate& candidate, const CorpusBatch& batch, std::size_t batch_tokens) const;
  std::vector<FeatureRow> build_all(const std::vector<Candidate>& candidates, const CorpusBatch& batch) const;

  // Proportions for free text, seeded from the text itself.
  InferResult infer_text(const std::vector<std::string_view>& paragraphs) const;

 private:
  const InferResult& article_topics(const Article& article) const;

  FeatureResources res_;
  FeatureMask mask_;
  std::vector<std::string> columns_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::string, InferResult> article_cache_;
};

// Lowercased lemmas of the tagged tokens that contain a letter.
std::vector<std::string> bag_of_lemmas(const std::vector<TaggedToken>& tokens);

// Feature dump: metadata columns (wid, surface, filter flags) followed by one
// column per feature.
void write_feature_table(const std::filesystem::path& path, const std::vector<std::string>& columns,
                         const std::vector<FeatureRow>& rows);

struct FeatureTable {
  std::vector<std::string> columns;
  std::vector<FeatureRow> rows;
};
FeatureTable read_feature_table(const std::filesystem::path& path);

}  // namespace logoscope
