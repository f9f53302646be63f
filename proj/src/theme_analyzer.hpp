// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "aho_corasick.hpp"
#include "article.hpp"
#include "tagger.hpp"

namespace logoscope {

inline constexpr std::size_t kMaxTermUnits = 4;

struct ThemeTerm {
  std::vector<std::string> units;  // "lemma-pos"
  std::string text() const;
  friend bool operator==(const ThemeTerm&, const ThemeTerm&) = default;
};

struct Theme {
  std::string label;
  std::vector<ThemeTerm> terms;
  std::string display_color;
};

// `lemma-pos`, split at the last hyphen; pos must be one of the tag set.
bool is_valid_unit(std::string_view unit);
// Lowercases the lemma part.
std::string normalize_unit(std::string_view unit);

// Parses one theme file body. Throws MalformedTerm(file:line).
Theme parse_theme(std::string label, std::string_view text, std::string_view file_name = "");

struct ThemeSpan {
  std::size_t paragraph_index = 0;
  CharSpan span;  // byte offsets into the paragraph
  std::size_t theme = 0;
  std::size_t term = 0;

  friend bool operator==(const ThemeSpan&, const ThemeSpan&) = default;
  friend auto operator<=>(const ThemeSpan&, const ThemeSpan&) = default;
};

struct ThemeScore {
  std::string label;
  std::size_t distinct_terms_matched = 0;
  std::size_t total_occurrences = 0;
};

struct ThemeMatchResult {
  std::vector<ThemeScore> scores;  // register order, every theme
  std::vector<ThemeSpan> spans;    // sorted
};

struct ColorSpan {
  std::size_t paragraph_index = 0;
  CharSpan span;
  std::string theme_label;
  std::string color;

  friend bool operator==(const ColorSpan&, const ColorSpan&) = default;
};

class ThemeRegister {
 public:
  ThemeRegister() = default;
  // Throws DuplicateLabel or EmptyTheme.
  explicit ThemeRegister(std::vector<Theme> themes);

  // themes/<Label>.txt files, sorted by label. Throws MalformedTerm,
  // DuplicateLabel.
  static ThemeRegister load(const std::filesystem::path& directory);

  const std::vector<Theme>& themes() const { return themes_; }
  std::size_t size() const { return themes_.size(); }
  const Theme* find(std::string_view label) const;

  // Every occurrence of every term; multi-unit terms need consecutive tokens.
  ThemeMatchResult match(const std::vector<std::vector<TaggedToken>>& paragraphs) const;

 private:
  struct PatternRef {
    std::size_t theme;
    std::size_t term;
  };
  std::vector<Theme> themes_;
  std::unordered_map<std::string, std::uint32_t> unit_ids_;  // 0 is reserved for unknown units
  AhoCorasick<std::uint32_t> automaton_;
  std::vector<PatternRef> patterns_;
};

// distinct desc, total desc, label asc; themes without matches are dropped.
std::vector<ThemeScore> rank_themes(const ThemeMatchResult& result);
std::vector<std::string> top_themes(const std::vector<ThemeScore>& ranked, std::size_t n = 3);

// Non-overlapping display spans; where spans overlap, the higher-ranked theme
// keeps the contested part. Sorted by position.
std::vector<ColorSpan> coloring(const ThemeRegister& reg, const ThemeMatchResult& result);

struct ThemeAnalysis {
  ThemeMatchResult result;
  std::vector<ThemeScore> ranked;
  std::vector<std::string> top3;
  std::vector<ColorSpan> colors;
};

ThemeAnalysis analyze_article(const ThemeRegister& reg, const Article& article, const TagFn& tag);

nlohmann::json to_json(const ThemeAnalysis& analysis);

}  // namespace logoscope
