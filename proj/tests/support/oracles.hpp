// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "feature_builder.hpp"
#include "segmenter.hpp"
#include "theme_analyzer.hpp"
#include "utf8.hpp"

namespace logoscope::testing {

// Textbook Wagner-Fischer over a full matrix.
inline std::size_t dp_edit_distance(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  }
  return d[a.size()][b.size()];
}

inline std::u32string random_cps(std::mt19937_64& rng, const std::u32string& alphabet, std::size_t min_len,
                                 std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::u32string s(len(rng), U'a');
  for (auto& c : s) c = alphabet[pick(rng)];
  return s;
}

inline std::u32string random_word(std::mt19937_64& rng, std::size_t max_len) {
  return random_cps(rng, U"abcdeéèàç", 0, max_len);
}

using SpanSet = std::set<std::tuple<std::size_t, std::size_t, std::size_t>>;  // pattern, begin, end

template <typename Symbol>
SpanSet naive_scan(const std::vector<std::basic_string<Symbol>>& patterns, const std::basic_string<Symbol>& text) {
  SpanSet out;
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    const auto& pat = patterns[p];
    if (pat.empty() || pat.size() > text.size()) continue;
    for (std::size_t i = 0; i + pat.size() <= text.size(); ++i) {
      if (text.compare(i, pat.size(), pat) == 0) out.insert({p, i, i + pat.size()});
    }
  }
  return out;
}

inline Position expected_position(std::size_t index, std::size_t count) {
  const bool beginning = index <= 1;
  const bool end = count - index <= 3;
  if (beginning) return Position::kBeginning;
  return end ? Position::kEnd : Position::kMiddle;
}

// One random containment instance: known forms of at least three code points
// found inside a surface, compared with a quadratic scan. Returns false on the
// first disagreement.
inline bool containment_instance_agrees(std::mt19937_64& rng) {
  const std::u32string alphabet = U"abéeç";
  StringSet forms;
  std::uniform_int_distribution<int> count(1, 15);
  for (int i = count(rng); i > 0; --i) forms.insert(utf8::encode(random_cps(rng, alphabet, 1, 6)));
  const std::u32string surface = random_cps(rng, alphabet, 1, 16);
  const auto index = ContainmentIndex::build(forms, 3);

  std::vector<std::u32string> patterns;
  for (const auto& f : std::set<std::string>(forms.begin(), forms.end())) {
    auto cps = utf8::decode(f);
    if (cps.size() >= 3) patterns.push_back(cps);
  }
  std::set<std::tuple<std::string, std::size_t, std::size_t>> expected;
  for (const auto& [p, b, e] : naive_scan(patterns, surface)) expected.insert({utf8::encode(patterns[p]), b, e});

  std::set<std::tuple<std::string, std::size_t, std::size_t>> got;
  const auto stats = index.find(utf8::encode(surface));
  for (const auto& m : stats.matches) got.insert({m.contained_form, m.span.begin, m.span.end});
  if (got != expected || stats.count != expected.size()) return false;

  std::vector<bool> covered(surface.size(), false);
  std::size_t max_len = 0;
  for (const auto& [f, b, e] : expected) {
    max_len = std::max(max_len, e - b);
    for (auto i = b; i < e; ++i) covered[i] = true;
  }
  const double coverage =
      static_cast<double>(std::count(covered.begin(), covered.end(), true)) / static_cast<double>(surface.size());
  return stats.max_len == max_len && std::abs(stats.coverage - coverage) < 1e-12;
}

// One random theme register and two tagged paragraphs; every occurrence of
// every term is compared with a direct scan, as are the per-theme scores.
inline bool theme_instance_agrees(std::mt19937_64& rng) {
  const std::vector<std::string> lemmas = {"loi", "carrez", "banque", "taux", "armée"};
  const std::vector<PosTag> tags = {PosTag::kNc, PosTag::kAdj};
  std::uniform_int_distribution<std::size_t> pick_lemma(0, lemmas.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_tag(0, tags.size() - 1);
  auto random_unit = [&] { return lemmas[pick_lemma(rng)] + "-" + std::string(to_string(tags[pick_tag(rng)])); };

  std::vector<Theme> themes;
  std::uniform_int_distribution<int> theme_count(1, 4);
  std::uniform_int_distribution<int> term_count(1, 5);
  std::uniform_int_distribution<std::size_t> term_len(1, 3);
  const int nt = theme_count(rng);
  for (int t = 0; t < nt; ++t) {
    Theme theme;
    theme.label = "T" + std::to_string(t);
    std::set<std::vector<std::string>> seen;
    for (int i = term_count(rng); i > 0; --i) {
      ThemeTerm term;
      for (std::size_t u = term_len(rng); u > 0; --u) term.units.push_back(random_unit());
      if (seen.insert(term.units).second) theme.terms.push_back(term);
    }
    themes.push_back(theme);
  }
  const ThemeRegister reg(themes);

  std::vector<std::vector<TaggedToken>> paragraphs(2);
  std::uniform_int_distribution<std::size_t> para_len(0, 25);
  for (auto& para : paragraphs) {
    std::size_t offset = 0;
    for (std::size_t i = para_len(rng); i > 0; --i) {
      TaggedToken tok;
      tok.lemma = lemmas[pick_lemma(rng)];
      tok.surface = tok.lemma;
      tok.pos = tags[pick_tag(rng)];
      tok.span = {offset, offset + tok.surface.size()};
      offset = tok.span.end + 1;
      para.push_back(tok);
    }
  }

  std::vector<ThemeSpan> expected;
  for (std::size_t p = 0; p < paragraphs.size(); ++p) {
    const auto& toks = paragraphs[p];
    for (std::size_t t = 0; t < themes.size(); ++t) {
      for (std::size_t k = 0; k < themes[t].terms.size(); ++k) {
        const auto& units = themes[t].terms[k].units;
        for (std::size_t i = 0; i + units.size() <= toks.size(); ++i) {
          bool hit = true;
          for (std::size_t u = 0; u < units.size() && hit; ++u) hit = toks[i + u].unit() == units[u];
          if (hit) expected.push_back({p, {toks[i].span.begin, toks[i + units.size() - 1].span.end}, t, k});
        }
      }
    }
  }
  std::sort(expected.begin(), expected.end());

  const auto result = reg.match(paragraphs);
  if (result.spans != expected) return false;
  for (std::size_t t = 0; t < themes.size(); ++t) {
    std::set<std::size_t> distinct;
    std::size_t total = 0;
    for (const auto& s : expected) {
      if (s.theme == t) {
        distinct.insert(s.term);
        ++total;
      }
    }
    if (result.scores[t].distinct_terms_matched != distinct.size() || result.scores[t].total_occurrences != total) {
      return false;
    }
  }
  return true;
}

}  // namespace logoscope::testing
