// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "error.hpp"
#include "oracles.hpp"
#include "segmenter.hpp"

namespace logoscope {
namespace {

std::vector<std::string> surfaces(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(text)) out.push_back(t.surface);
  return out;
}

using testing::expected_position;

TEST(Position, ExhaustiveOverParagraphCounts) {
  for (std::size_t n = 1; n <= 20; ++n) {
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_EQ(position_of(i, n), expected_position(i, n)) << i << " of " << n;
    }
    EXPECT_THROW(position_of(n, n), Error);
  }
}

TEST(Position, BeginningWinsInShortArticles) {
  EXPECT_EQ(position_of(0, 3), Position::kBeginning);
  EXPECT_EQ(position_of(1, 3), Position::kBeginning);
  EXPECT_EQ(position_of(2, 3), Position::kEnd);
  EXPECT_EQ(position_of(2, 6), Position::kMiddle);
  EXPECT_EQ(position_of(3, 6), Position::kEnd);
}

TEST(Position, StringRoundTrip) {
  for (auto p : {Position::kBeginning, Position::kMiddle, Position::kEnd}) {
    EXPECT_EQ(parse_position(to_string(p)), p);
  }
  EXPECT_THROW(parse_position("top"), Error);
}

TEST(Tokenize, KeepsInnerJoinersOnly) {
  EXPECT_EQ(surfaces("Le franco-planétaire, l'économie - aujourd'hui."),
            (std::vector<std::string>{"Le", "franco-planétaire", "l'économie", "aujourd'hui"}));
  EXPECT_EQ(surfaces("'citation' -tiret- fin-"), (std::vector<std::string>{"citation", "tiret", "fin"}));
  EXPECT_EQ(surfaces("l’infobésité"), (std::vector<std::string>{"l’infobésité"}));
}

TEST(Tokenize, SpansAreByteOffsets) {
  const std::string text = "« dégooglisation » arrive";
  for (const auto& t : tokenize(text)) EXPECT_EQ(text.substr(t.span.begin, t.span.size()), t.surface);
  const auto toks = tokenize(text);
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_EQ(toks[0].span.begin, std::string("« ").size());
}

TEST(Sentences, TileTheParagraph) {
  const std::string text = "M. Dupont arrive. Il parle ! Puis il part… « Enfin. » Fin";
  const auto spans = split_sentences(text);
  ASSERT_FALSE(spans.empty());
  EXPECT_EQ(spans.front().begin, 0u);
  EXPECT_EQ(spans.back().end, text.size());
  for (std::size_t i = 1; i < spans.size(); ++i) EXPECT_EQ(spans[i].begin, spans[i - 1].end);
  EXPECT_EQ(spans.size(), 5u);
}

TEST(Sentences, TokensCarrySentenceIndex) {
  const auto toks = tokenize("Un deux. Trois quatre.");
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_EQ(toks[1].sentence_index, 0u);
  EXPECT_EQ(toks[2].sentence_index, 1u);
}

TEST(Quoted, GuillemetsAndCurlyQuotes) {
  const std::string a = "Le collectif défend une « dégooglisation » des services.";
  EXPECT_TRUE(detect_quoted(a, tokenize(a)[4].span));
  EXPECT_FALSE(detect_quoted(a, tokenize(a)[1].span));
  const std::string b = "Il parle de “normcore” et de mode.";
  EXPECT_TRUE(detect_quoted(b, tokenize(b)[3].span));
  const std::string c = "Un \"mot\" ici.";
  EXPECT_TRUE(detect_quoted(c, tokenize(c)[1].span));
}

TEST(Quoted, QuotesInOtherSentenceDoNotCount) {
  const std::string text = "Il dit « oui ». Le complotisme progresse.";
  const auto toks = tokenize(text);
  EXPECT_TRUE(detect_quoted(text, toks[2].span));
  EXPECT_FALSE(detect_quoted(text, toks[4].span));
}

TEST(Quoted, ApostropheIsNotAQuote) {
  const std::string text = "L’infobésité gagne aujourd’hui du terrain.";
  for (const auto& t : tokenize(text)) EXPECT_FALSE(detect_quoted(text, t.span)) << t.surface;
}

TEST(Elision, StripsKnownClitics) {
  EXPECT_EQ(elision_prefix_length("l'économie"), 2u);
  EXPECT_EQ(elision_prefix_length("qu'il"), 3u);
  EXPECT_EQ(elision_prefix_length("jusqu'alors"), 6u);
  EXPECT_EQ(elision_prefix_length("L’infobésité"), std::string("L’").size());
  EXPECT_EQ(elision_prefix_length("aujourd'hui"), 0u);
  EXPECT_EQ(elision_prefix_length("l'"), 0u);
}

TEST(Segment, OccurrencesPerParagraph) {
  Article a;
  a.article_id = "a1";
  a.paragraphs = {"Premier paragraphe.", "Second, avec deux phrases. Voilà."};
  const auto occ = segment(a);
  ASSERT_EQ(occ.size(), 7u);
  EXPECT_EQ(occ[0].paragraph_index, 0u);
  EXPECT_EQ(occ[2].paragraph_index, 1u);
  EXPECT_EQ(occ.back().sentence_index, 1u);
  EXPECT_EQ(occ.back().article_id, "a1");
}

}  // namespace
}  // namespace logoscope
