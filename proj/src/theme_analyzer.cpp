// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "theme_analyzer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "error.hpp"
#include "file_util.hpp"
#include "utf8.hpp"

namespace logoscope {

namespace {

constexpr std::string_view kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                         "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string unit_of(const TaggedToken& t) { return utf8::to_lower(t.lemma) + "-" + std::string(to_string(t.pos)); }

}  // namespace

std::string ThemeTerm::text() const {
  std::string out;
  for (const auto& u : units) {
    if (!out.empty()) out += ' ';
    out += u;
  }
  return out;
}

bool is_valid_unit(std::string_view unit) {
  const std::size_t dash = unit.rfind('-');
  if (dash == std::string_view::npos || dash == 0) return false;
  return parse_pos_tag(unit.substr(dash + 1)).has_value();
}

std::string normalize_unit(std::string_view unit) {
  const std::size_t dash = unit.rfind('-');
  return utf8::to_lower(utf8::nfc(unit.substr(0, dash))) + std::string(unit.substr(dash));
}

Theme parse_theme(std::string label, std::string_view text, std::string_view file_name) {
  Theme theme;
  theme.label = std::move(label);
  std::set<std::vector<std::string>> seen;
  std::size_t line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line_no == 1 && line.starts_with("#color:")) theme.display_color = std::string(trim(line.substr(7)));
      continue;
    }
    ThemeTerm term;
    std::istringstream in{std::string(line)};
    for (std::string unit; in >> unit;) {
      if (!is_valid_unit(unit)) {
        throw Error(ErrorCode::kParse, "MalformedTerm",
                    std::string(file_name) + ":" + std::to_string(line_no) + ": bad unit '" + unit + "'");
      }
      term.units.push_back(normalize_unit(unit));
    }
    if (term.units.size() > kMaxTermUnits) {
      throw Error(ErrorCode::kParse, "MalformedTerm",
                  std::string(file_name) + ":" + std::to_string(line_no) + ": more than 4 units");
    }
    if (seen.insert(term.units).second) theme.terms.push_back(std::move(term));
  }
  return theme;
}

ThemeRegister::ThemeRegister(std::vector<Theme> themes) : themes_(std::move(themes)) {
  std::set<std::string> labels;
  for (std::size_t t = 0; t < themes_.size(); ++t) {
    Theme& theme = themes_[t];
    if (!labels.insert(theme.label).second) {
      throw Error(ErrorCode::kConflict, "DuplicateLabel", "duplicate theme label '" + theme.label + "'");
    }
    if (theme.terms.empty()) throw Error(ErrorCode::kParse, "EmptyTheme", "theme '" + theme.label + "' has no terms");
    if (theme.display_color.empty()) theme.display_color = std::string(kPalette[t % std::size(kPalette)]);
    for (std::size_t k = 0; k < theme.terms.size(); ++k) {
      std::vector<std::uint32_t> ids;
      for (const auto& u : theme.terms[k].units) {
        auto [it, inserted] = unit_ids_.emplace(u, static_cast<std::uint32_t>(unit_ids_.size() + 1));
        ids.push_back(it->second);
      }
      automaton_.add(std::span<const std::uint32_t>(ids));
      patterns_.push_back({t, k});
    }
  }
  automaton_.build();
}

ThemeRegister ThemeRegister::load(const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory)) {
    throw Error(ErrorCode::kNotFound, "MissingFile", "theme directory not found: " + directory.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Theme> themes;
  for (const auto& f : files) {
    themes.push_back(parse_theme(utf8::nfc(f.stem().string()), read_file(f), f.filename().string()));
  }
  return ThemeRegister(std::move(themes));
}

const Theme* ThemeRegister::find(std::string_view label) const {
  for (const auto& t : themes_) {
    if (t.label == label) return &t;
  }
  return nullptr;
}

ThemeMatchResult ThemeRegister::match(const std::vector<std::vector<TaggedToken>>& paragraphs) const {
  ThemeMatchResult result;
  for (const auto& t : themes_) result.scores.push_back({t.label, 0, 0});
  std::vector<std::set<std::size_t>> distinct(themes_.size());
  for (std::size_t p = 0; p < paragraphs.size(); ++p) {
    const auto& tokens = paragraphs[p];
    std::vector<std::uint32_t> ids;
    ids.reserve(tokens.size());
    for (const auto& tok : tokens) {
      const auto it = unit_ids_.find(unit_of(tok));
      ids.push_back(it == unit_ids_.end() ? 0 : it->second);
    }
    automaton_.scan(std::span<const std::uint32_t>(ids), [&](const auto& m) {
      const PatternRef& ref = patterns_[m.pattern];
      result.spans.push_back({p, {tokens[m.begin].span.begin, tokens[m.end - 1].span.end}, ref.theme, ref.term});
      ++result.scores[ref.theme].total_occurrences;
      distinct[ref.theme].insert(ref.term);
    });
  }
  for (std::size_t t = 0; t < themes_.size(); ++t) result.scores[t].distinct_terms_matched = distinct[t].size();
  std::sort(result.spans.begin(), result.spans.end());
  return result;
}

std::vector<ThemeScore> rank_themes(const ThemeMatchResult& result) {
  std::vector<ThemeScore> ranked;
  for (const auto& s : result.scores) {
    if (s.distinct_terms_matched > 0) ranked.push_back(s);
  }
  std::sort(ranked.begin(), ranked.end(), [](const ThemeScore& a, const ThemeScore& b) {
    if (a.distinct_terms_matched != b.distinct_terms_matched) return a.distinct_terms_matched > b.distinct_terms_matched;
    if (a.total_occurrences != b.total_occurrences) return a.total_occurrences > b.total_occurrences;
    return a.label < b.label;
  });
  return ranked;
}

std::vector<std::string> top_themes(const std::vector<ThemeScore>& ranked, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && out.size() < n; ++i) {
    if (ranked[i].distinct_terms_matched > 0) out.push_back(ranked[i].label);
  }
  return out;
}

std::vector<ColorSpan> coloring(const ThemeRegister& reg, const ThemeMatchResult& result) {
  const auto ranked = rank_themes(result);
  std::map<std::string, std::size_t> theme_index;
  for (std::size_t t = 0; t < reg.themes().size(); ++t) theme_index[reg.themes()[t].label] = t;

  std::map<std::size_t, std::vector<CharSpan>> taken;  // per paragraph, disjoint and sorted
  std::vector<ColorSpan> out;
  for (const auto& score : ranked) {
    const std::size_t t = theme_index.at(score.label);
    std::vector<ThemeSpan> own;
    for (const auto& s : result.spans) {
      if (s.theme == t) own.push_back(s);
    }
    std::sort(own.begin(), own.end(), [](const ThemeSpan& a, const ThemeSpan& b) {
      if (a.paragraph_index != b.paragraph_index) return a.paragraph_index < b.paragraph_index;
      if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
      return a.span.end > b.span.end;
    });
    for (const auto& s : own) {
      auto& used = taken[s.paragraph_index];
      std::vector<CharSpan> pieces{s.span};
      for (const CharSpan& u : used) {
        std::vector<CharSpan> next;
        for (const CharSpan& p : pieces) {
          if (u.end <= p.begin || p.end <= u.begin) {
            next.push_back(p);
            continue;
          }
          if (p.begin < u.begin) next.push_back({p.begin, u.begin});
          if (u.end < p.end) next.push_back({u.end, p.end});
        }
        pieces = std::move(next);
      }
      for (const CharSpan& p : pieces) {
        out.push_back({s.paragraph_index, p, reg.themes()[t].label, reg.themes()[t].display_color});
        used.insert(std::upper_bound(used.begin(), used.end(), p), p);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ColorSpan& a, const ColorSpan& b) {
    return std::tie(a.paragraph_index, a.span) < std::tie(b.paragraph_index, b.span);
  });
  return out;
}

ThemeAnalysis analyze_article(const ThemeRegister& reg, const Article& article, const TagFn& tag) {
  std::vector<std::vector<TaggedToken>> tagged;
  tagged.reserve(article.paragraphs.size());
  for (const auto& p : article.paragraphs) tagged.push_back(tag(p));
  ThemeAnalysis a;
  a.result = reg.match(tagged);
  a.ranked = rank_themes(a.result);
  a.top3 = top_themes(a.ranked);
  a.colors = coloring(reg, a.result);
  return a;
}

nlohmann::json to_json(const ThemeAnalysis& a) {
  nlohmann::json ranked = nlohmann::json::array();
  for (const auto& s : a.ranked) {
    ranked.push_back({{"label", s.label},
                      {"distinct_terms_matched", s.distinct_terms_matched},
                      {"total_occurrences", s.total_occurrences}});
  }
  nlohmann::json spans = nlohmann::json::array();
  for (const auto& c : a.colors) {
    spans.push_back({{"paragraph_index", c.paragraph_index},
                     {"char_span", {c.span.begin, c.span.end}},
                     {"theme", c.theme_label},
                     {"color", c.color}});
  }
  return {{"themes", ranked}, {"top3", a.top3}, {"spans", spans}};
}

}  // namespace logoscope
