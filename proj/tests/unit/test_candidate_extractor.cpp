// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include <algorithm>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "candidate_extractor.hpp"
#include "edit_distance.hpp"
#include "error.hpp"
#include "test_support.hpp"
#include "utf8.hpp"

namespace logoscope {
namespace {

using testing::TempDir;
using testing::write_text;

class CandidateTest : public ::testing::Test {
 protected:
  void SetUp() override {
    write_text(dir_ / "lex.txt",
               "le\nla\nles\nde\ndes\nun\nune\net\nen\nsa\nmaire\nannonce\ncandidature\ncollectif\ndéfend\n"
               "services\nnumériques\nlecteurs\nse\nplaignent\nd'une\nqui\nrend\ntri\ndifficile\ndu\nvie\n"
               "nouvelles\nmonde\nprojet\nville\ngoogle\nvert\nsport\nParis\nsemaine\nchargée\ncette\npaix\n");
    lexicon_ = ExclusionList::load({dir_ / "lex.txt"});
  }

  CorpusBatch batch(std::vector<std::vector<std::string>> articles) const {
    CorpusBatch b;
    b.batch_date = Date(2026, 3, 3);
    for (std::size_t i = 0; i < articles.size(); ++i) {
      Article a;
      a.article_id = "a" + std::to_string(i);
      a.journal = "J";
      a.fetch_date = b.batch_date;
      a.paragraphs = articles[i];
      b.articles.push_back(a);
    }
    return b;
  }

  TempDir dir_;
  ExclusionList lexicon_;
};

TEST_F(CandidateTest, OneCandidatePerUnknownForm) {
  const auto b = batch({{"Le collectif défend la « dégooglisation » des services numériques.",
                         "La dégooglisation de la ville, et l'infobésité."},
                        {"Le maire annonce sa candiudature. Dégooglisation en vue."}});
  const auto cands = extract_unknown(b, lexicon_);
  std::vector<std::string> surfaces;
  for (const auto& c : cands) surfaces.push_back(c.surface);
  EXPECT_EQ(surfaces, (std::vector<std::string>{"candiudature", "dégooglisation", "infobésité", "vue"}));

  const auto& deg = cands[1];
  EXPECT_EQ(deg.abs_freq, 3u);
  EXPECT_EQ(deg.doc_freq, 2u);
  EXPECT_EQ(deg.batch_date, Date(2026, 3, 3));
  ASSERT_EQ(deg.occurrences.size(), 3u);
  EXPECT_EQ(deg.occurrences[0].article_id, "a0");
  EXPECT_EQ(deg.occurrences[0].paragraph_index, 0u);
  EXPECT_EQ(deg.occurrences[2].article_id, "a1");

  const auto& info = cands[2];
  const auto& para = b.articles[0].paragraphs[1];
  EXPECT_EQ(para.substr(info.occurrences[0].span.begin, info.occurrences[0].span.size()), "infobésité");
}

TEST_F(CandidateTest, SentenceInitialCapitalIsNotAProperNoun) {
  const auto b = batch({{"Semaine chargée. Vert et sport."}});
  EXPECT_TRUE(extract_unknown(b, lexicon_).empty());
  const auto names = extract_unknown(batch({{"Le maire Lanvaux. Lanvaux annonce."}}), lexicon_);
  ASSERT_EQ(names.size(), 1u);
  EXPECT_EQ(names[0].surface, "Lanvaux");
  EXPECT_EQ(names[0].abs_freq, 2u);
}

TEST_F(CandidateTest, SkipsShortAndNonLetterTokens) {
  const auto cands = extract_unknown(batch({{"x 2026 3e 12 y"}}), lexicon_);
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(cands[0].surface, "3e");
}

TEST_F(CandidateTest, ExtendedLexiconSuppressesDecidedForms) {
  const auto b = batch({{"La dégooglisation et la candiudature."}});
  EXPECT_EQ(extract_unknown(b, lexicon_).size(), 2u);
  lexicon_.extend({"dégooglisation", "candiudature"}, "decided", Date(2026, 3, 3));
  EXPECT_TRUE(extract_unknown(b, lexicon_).empty());
}

TEST_F(CandidateTest, ConcatSplitPrefersBalance) {
  auto split = concat_split("villeprojet", lexicon_);
  ASSERT_TRUE(split);
  EXPECT_EQ(split->first, "ville");
  EXPECT_EQ(split->second, "projet");
  EXPECT_FALSE(concat_split("dégooglisation", lexicon_));
}

TEST_F(CandidateTest, LexiconSpellProviderMatchesBruteForce) {
  LexiconSpellProvider provider(lexicon_, 2, 100);
  for (std::string q : {"candiudature", "mair", "servicse", "zzzzz", "Paris"}) {
    std::vector<std::string> expected;
    const auto ql = utf8::decode(utf8::to_lower(q));
    for (const auto& f : lexicon_.forms()) {
      const auto d = edit_distance(ql, utf8::decode(utf8::to_lower(f)));
      if (d >= 1 && d <= 2) expected.push_back(f);
    }
    auto got = provider.suggest(q);
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected) << q;
  }
}

TEST(SpellResult, DistanceOnLowercaseAndSelfIgnored) {
  auto r = spell_result("Candiudature", {"candidature", "candiudature"});
  EXPECT_TRUE(r.suspect);
  EXPECT_EQ(r.min_distance, 1u);
  r = spell_result("gouvernment", {"gouvernement"});
  EXPECT_EQ(r.min_distance, 1u);
  r = spell_result("dégooglisation", {});
  EXPECT_FALSE(r.suspect);
  EXPECT_EQ(r.min_distance, kNoSuggestionDistance);
  r = spell_result("abcdef", {"abcxyz"});
  EXPECT_FALSE(r.suspect);
  EXPECT_EQ(r.min_distance, 3u);
}

class FailingSpell final : public SpellProvider {
 public:
  std::vector<std::string> suggest(std::string_view) override {
    throw Error(ErrorCode::kAdapter, "SpellUnavailable", "down");
  }
};

TEST(SpellResult, AdapterFailureIsNotSuspect) {
  FailingSpell spell;
  const auto r = spell_suspect("mot", spell);
  EXPECT_FALSE(r.suspect);
}

TEST(Ngrams, FlagsUnseenGramsAndRespectsJoiners) {
  const auto table = NgramTable::from_forms(StringSet{"chat", "porte", "avion"});
  EXPECT_FALSE(char_ngram_filter("chat", table));
  EXPECT_FALSE(char_ngram_filter("porte-avion", table));
  EXPECT_TRUE(char_ngram_filter("chqt", table));
  EXPECT_TRUE(char_ngram_filter("teav", table));
  EXPECT_EQ(table.count(U"ch"), 1u);
  EXPECT_EQ(table.count(U"e-"), 0u);
  EXPECT_EQ(ngram_segments("Porte-Avion"), (std::vector<std::u32string>{U"porte", U"avion"}));
}

TEST(WidRegistry, SequentialStableAndPersistent) {
  TempDir dir;
  WidRegistry reg;
  EXPECT_EQ(reg.assign("normcore", Date(2026, 3, 2)), 1);
  EXPECT_EQ(reg.assign("complotisme", Date(2026, 3, 2)), 2);
  EXPECT_EQ(reg.assign("normcore", Date(2026, 3, 3)), 1);
  reg.save(dir / "registry.tsv");
  auto loaded = WidRegistry::load(dir / "registry.tsv");
  EXPECT_EQ(loaded.size(), 2u);
  EXPECT_EQ(*loaded.surface_of(2), "complotisme");
  EXPECT_EQ(*loaded.first_date(1), Date(2026, 3, 2));
  EXPECT_EQ(loaded.assign("infobésité", Date(2026, 3, 3)), 3);
  EXPECT_FALSE(loaded.find("absent"));
}

TEST_F(CandidateTest, CandidatesFileRoundTrip) {
  auto cands = extract_unknown(batch({{"La dégooglisation et la candiudature."}}), lexicon_);
  cands[0].candidate_id = 7;
  cands[0].flags.spell_suspect = true;
  cands[0].min_spell_distance = 1;
  write_candidates(dir_ / "c.jsonl", cands);
  EXPECT_EQ(read_candidates(dir_ / "c.jsonl"), cands);
}

TEST_F(CandidateTest, CountTokens) {
  EXPECT_EQ(count_tokens(batch({{"Un deux trois.", "Quatre"}, {"cinq l'économie"}})), 6u);
}

}  // namespace
}  // namespace logoscope
