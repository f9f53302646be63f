// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "error.hpp"
#include "segmenter.hpp"
#include "test_support.hpp"
#include "theme_analyzer.hpp"
#include "utf8.hpp"

namespace logoscope {
namespace {

std::vector<TaggedToken> simple_tag(std::string_view text) {
  static const std::map<std::string, PosTag> pos = {{"de", PosTag::kPrp}, {"la", PosTag::kDet},
                                                    {"le", PosTag::kDet}, {"vote", PosTag::kV}};
  std::vector<TaggedToken> out;
  for (const auto& t : tokenize(text)) {
    const std::string lemma = utf8::to_lower(t.surface);
    const auto it = pos.find(lemma);
    out.push_back({t.surface, lemma, it == pos.end() ? PosTag::kNc : it->second, t.span});
  }
  return out;
}

ThemeRegister small_register() {
  return ThemeRegister({parse_theme("Politique", "#color: #112233\nprojet-nc de-prp loi-nc\nloi-nc\nsénat-nc\n"),
                        parse_theme("Economie", "banque-nc\ntaux-nc\nloi-nc de-prp finance-nc\n"),
                        parse_theme("Sport", "match-nc\nstade-nc\n")});
}

TEST(ParseTheme, ColorUnitsAndDuplicates) {
  const auto t = parse_theme("X", "#color: #abcdef\n# commentaire\nProjet-nc de-prp loi-nc\nprojet-nc de-prp loi-nc\n\nsport-nc\n");
  EXPECT_EQ(t.display_color, "#abcdef");
  ASSERT_EQ(t.terms.size(), 2u);
  EXPECT_EQ(t.terms[0].text(), "projet-nc de-prp loi-nc");
  EXPECT_EQ(normalize_unit("Sénat-nc"), "sénat-nc");
  EXPECT_TRUE(is_valid_unit("porte-avion-nc"));
  EXPECT_FALSE(is_valid_unit("porte"));
  EXPECT_FALSE(is_valid_unit("-nc"));
}

TEST(ParseTheme, MalformedTermsThrow) {
  try {
    parse_theme("X", "ok-nc\nmauvais\n", "X.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "MalformedTerm");
    EXPECT_NE(std::string(e.what()).find("X.txt:2"), std::string::npos);
  }
  EXPECT_THROW(parse_theme("X", "a-nc b-nc c-nc d-nc e-nc\n"), Error);
}

TEST(ThemeRegister, RejectsDuplicatesAndEmptyThemes) {
  try {
    ThemeRegister({parse_theme("A", "a-nc\n"), parse_theme("A", "b-nc\n")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "DuplicateLabel");
  }
  EXPECT_THROW(ThemeRegister({parse_theme("A", "# vide\n")}), Error);
  const ThemeRegister reg({parse_theme("A", "a-nc\n"), parse_theme("B", "b-nc\n")});
  EXPECT_FALSE(reg.themes()[1].display_color.empty());
  EXPECT_NE(reg.themes()[0].display_color, reg.themes()[1].display_color);
  EXPECT_EQ(reg.find("B"), &reg.themes()[1]);
  EXPECT_EQ(reg.find("C"), nullptr);
}

TEST(ThemeRegister, MultiUnitTermsNeedConsecutiveTokens) {
  const auto reg = small_register();
  const std::string p = "Le projet de loi de finance passe au sénat, puis le projet de la loi.";
  const auto r = reg.match({simple_tag(p)});
  EXPECT_EQ(r.scores[0].label, "Politique");
  EXPECT_EQ(r.scores[0].distinct_terms_matched, 3u);
  EXPECT_EQ(r.scores[0].total_occurrences, 4u);
  EXPECT_EQ(r.scores[1].distinct_terms_matched, 1u);
  EXPECT_EQ(r.scores[2].total_occurrences, 0u);
  std::vector<std::string> texts;
  for (const auto& s : r.spans) texts.push_back(p.substr(s.span.begin, s.span.size()));
  EXPECT_EQ(texts, (std::vector<std::string>{"projet de loi", "loi", "loi de finance", "sénat", "loi"}));
}

TEST(RankThemes, OrderAndTopThree) {
  ThemeMatchResult r;
  r.scores = {{"D", 2, 2}, {"A", 1, 5}, {"C", 2, 3}, {"B", 2, 3}, {"E", 0, 0}};
  const auto ranked = rank_themes(r);
  std::vector<std::string> labels;
  for (const auto& s : ranked) labels.push_back(s.label);
  EXPECT_EQ(labels, (std::vector<std::string>{"B", "C", "D", "A"}));
  EXPECT_EQ(top_themes(ranked), (std::vector<std::string>{"B", "C", "D"}));
  EXPECT_EQ(top_themes(ranked, 10).size(), 4u);
}

TEST(Coloring, EachByteTakesTheBestRankedCoveringTheme) {
  const auto reg = small_register();
  const std::vector<std::string> paras = {"Le projet de loi de finance, la banque et le taux.",
                                          "Match au stade, loi au sénat, loi de finance."};
  std::vector<std::vector<TaggedToken>> tagged;
  for (const auto& p : paras) tagged.push_back(simple_tag(p));
  const auto r = reg.match(tagged);
  const auto ranked = rank_themes(r);
  std::map<std::string, std::size_t> rank_of;
  for (std::size_t i = 0; i < ranked.size(); ++i) rank_of[ranked[i].label] = i;
  const auto colors = coloring(reg, r);

  for (std::size_t p = 0; p < paras.size(); ++p) {
    for (std::size_t b = 0; b < paras[p].size(); ++b) {
      std::optional<std::size_t> best;
      for (const auto& s : r.spans) {
        if (s.paragraph_index != p || b < s.span.begin || b >= s.span.end) continue;
        const std::size_t rk = rank_of.at(reg.themes()[s.theme].label);
        if (!best || rk < *best) best = rk;
      }
      std::vector<std::string> covering;
      for (const auto& c : colors) {
        if (c.paragraph_index == p && b >= c.span.begin && b < c.span.end) covering.push_back(c.theme_label);
      }
      if (!best) {
        EXPECT_TRUE(covering.empty()) << p << ":" << b;
      } else {
        ASSERT_EQ(covering.size(), 1u) << p << ":" << b;
        EXPECT_EQ(covering[0], ranked[*best].label) << p << ":" << b;
      }
    }
  }
  for (std::size_t i = 1; i < colors.size(); ++i) {
    EXPECT_LE(std::tie(colors[i - 1].paragraph_index, colors[i - 1].span.begin),
              std::tie(colors[i].paragraph_index, colors[i].span.begin));
  }
  for (const auto& c : colors) EXPECT_EQ(c.color, reg.find(c.theme_label)->display_color);
}

TEST(AnalyzeArticle, ShippedThemesWithFallbackTagger) {
  const auto reg = ThemeRegister::load(testing::data_dir() / "themes");
  EXPECT_GE(reg.size(), 5u);
  const FallbackTagger tagger(SuffixTable::load(testing::data_dir() / "suffix-table.tsv"));
  TagFn tag = [&](std::string_view text) { return tagger.tag_all(tokenize(text)); };
  Article a;
  a.paragraphs = {"Le président défend le projet de loi devant le sénat.", "Les députés votent."};
  const auto analysis = analyze_article(reg, a, tag);
  ASSERT_FALSE(analysis.top3.empty());
  EXPECT_EQ(analysis.top3[0], "Politique");
  EXPECT_LE(analysis.top3.size(), 3u);
  const auto j = to_json(analysis);
  EXPECT_EQ(j.at("top3")[0], "Politique");
  EXPECT_EQ(j.at("spans").size(), analysis.colors.size());
}

TEST(ThemeRegister, MissingDirectory) {
  testing::TempDir dir;
  EXPECT_THROW(ThemeRegister::load(dir / "absent"), Error);
}

}  // namespace
}  // namespace logoscope
