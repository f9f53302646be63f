// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include <algorithm>
#include <regex>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "error.hpp"
#include "kb_fixture.hpp"
#include "knowledge_base.hpp"
#include "test_support.hpp"

namespace logoscope {
namespace {

Occurrence simple_occurrence(const std::string& article_id, std::size_t paragraph, const std::string& text,
                             const Date& date = Date(2026, 3, 3)) {
  Occurrence o;
  o.article_id = article_id;
  o.journal = "J";
  o.date = date;
  o.paragraph_index = paragraph;
  o.position = Position::kMiddle;
  o.paragraph_text = text;
  o.span = {0, 3};
  return o;
}

// Entries whose occurrences pass the filter, in the knowledge base order.
std::vector<std::pair<std::int64_t, std::size_t>> oracle_query(const std::vector<NewWordEntry>& written,
                                                               const QueryFilter& f) {
  std::vector<NewWordEntry> kept;
  for (auto e : written) {
    if (f.regex && !std::regex_search(e.word, std::regex(*f.regex))) continue;
    if (f.pos && e.pos != *f.pos) continue;
    if (f.process && !e.processes.contains(*f.process)) continue;
    std::vector<Occurrence> occ;
    for (const auto& o : e.occurrences) {
      if (f.journal && o.journal != *f.journal) continue;
      if (f.theme && std::find(o.top_themes.begin(), o.top_themes.end(), *f.theme) == o.top_themes.end()) continue;
      if (f.from && o.date < *f.from) continue;
      if (f.to && o.date > *f.to) continue;
      if (f.quoted && o.quoted != *f.quoted) continue;
      occ.push_back(o);
    }
    if (occ.empty()) continue;
    e.occurrences = occ;
    kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end(), [](const NewWordEntry& a, const NewWordEntry& b) {
    return a.created_on != b.created_on ? a.created_on > b.created_on : a.wid < b.wid;
  });
  std::vector<std::pair<std::int64_t, std::size_t>> out;
  for (const auto& e : kept) out.emplace_back(e.wid, e.occurrences.size());
  return out;
}

TEST(Codes, RoundTripAndErrors) {
  EXPECT_EQ(parse_word_pos("NOM"), WordPos::kNom);
  EXPECT_EQ(to_string(WordPos::kVer), "VER");
  EXPECT_THROW(parse_word_pos("NC"), Error);
  EXPECT_EQ(parse_processes("EMP+MORSEM"), (std::set<Process>{Process::kEmp, Process::kMorsem}));
  EXPECT_EQ(join_processes({Process::kEmp, Process::kMorsem}), "MORSEM+EMP");
  EXPECT_THROW(parse_processes(""), Error);
  EXPECT_THROW(parse_processes("EMP+XYZ"), Error);
  EXPECT_EQ(parse_stats_dimension("theme_by_month"), StatsDimension::kThemeByMonth);
  EXPECT_THROW(parse_stats_dimension("colour"), Error);
}

TEST(WordMatching, VariantsAndElision) {
  EXPECT_TRUE(word_matches("infobésité", "Infobésité"));
  EXPECT_TRUE(word_matches("infobésité", "infobésités"));
  EXPECT_TRUE(word_matches("complotismes", "complotisme"));
  EXPECT_FALSE(word_matches("infobésité", "obésité"));
  const std::string p = "Face à l'infobésité, les lecteurs fuient.";
  const auto span = find_word(p, "infobésité");
  ASSERT_TRUE(span);
  EXPECT_EQ(p.substr(span->begin, span->size()), "infobésité");
  EXPECT_FALSE(find_word(p, "dégooglisation"));
}

TEST(DocumentOccurrence, PositionQuotedAndThemes) {
  Article a;
  a.article_id = "a1";
  a.journal = "J";
  a.fetch_date = Date(2026, 3, 3);
  a.paragraphs = {"Un.", "Deux.", "Trois.", "Le collectif défend la « dégooglisation ».", "Cinq.", "Six.", "Sept."};
  const std::string& p = a.paragraphs[3];
  const auto span = *find_word(p, "dégooglisation");
  MonitorContext ctx;
  const auto o = document_occurrence(a, 3, span, {"A", "B", "C", "D"}, ctx);
  EXPECT_EQ(o.position, Position::kMiddle);
  EXPECT_TRUE(o.quoted);
  EXPECT_EQ(o.top_themes.size(), 3u);
  EXPECT_EQ(o.paragraph_text, p);
  EXPECT_EQ(o.editorial_style, "J");
  EXPECT_EQ(document_occurrence(a, 4, {0, 4}, {}, ctx).position, Position::kEnd);
  EXPECT_THROW(document_occurrence(a, 7, {0, 1}, {}, ctx), Error);
}

TEST(KnowledgeBase, CreateEntryAndConstraints) {
  KnowledgeBase kb(":memory:");
  const auto o = simple_occurrence("a1", 2, "mot nouveau");
  const auto wid = kb.create_entry("mot", WordPos::kNom, {Process::kMorsem}, o, 17);
  EXPECT_EQ(wid, 17);
  EXPECT_EQ(kb.create_entry("autre", WordPos::kAdj, {Process::kEmp}, simple_occurrence("a2", 0, "autre")), 18);
  try {
    kb.create_entry("mot", WordPos::kNom, {Process::kMorsem}, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "DuplicateWord");
  }
  EXPECT_THROW(kb.create_entry("x", WordPos::kNom, {}, o), Error);
  auto bad = o;
  bad.top_themes = {"A", "B", "C", "D"};
  EXPECT_THROW(kb.create_entry("y", WordPos::kNom, {Process::kEmp}, bad), Error);
  bad = o;
  bad.span = {0, 99};
  EXPECT_THROW(kb.create_entry("z", WordPos::kNom, {Process::kEmp}, bad), Error);
  EXPECT_EQ(kb.size(), 2u);

  EXPECT_FALSE(kb.add_occurrence(17, o));
  EXPECT_TRUE(kb.add_occurrence(17, simple_occurrence("a1", 3, "mot encore")));
  const auto e = kb.entry(17);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->occurrences.size(), 2u);
  EXPECT_EQ(e->occurrences[0], o);
  EXPECT_EQ(kb.entry_by_word("autre")->wid, 18);
  EXPECT_FALSE(kb.entry(99));
}

TEST(KnowledgeBase, PersistsAcrossReopen) {
  testing::TempDir dir;
  const std::string path = (dir / "kb.sqlite").string();
  {
    KnowledgeBase kb(path);
    kb.create_entry("mot", WordPos::kNom, {Process::kMorsem}, simple_occurrence("a1", 0, "mot"));
    kb.record_decision({1, "mot", true, "NOM", "MORSEM", Date(2026, 3, 3), "ann"});
  }
  KnowledgeBase kb(path);
  EXPECT_EQ(kb.size(), 1u);
  const auto d = kb.decision(1);
  ASSERT_TRUE(d);
  EXPECT_TRUE(d->valid);
  EXPECT_EQ(d->annotator.value_or(""), "ann");
  EXPECT_EQ(kb.decisions().size(), 1u);
}

TEST(KnowledgeBase, MonitorAddsNewOccurrencesOnce) {
  KnowledgeBase kb(":memory:");
  kb.create_entry("infobésité", WordPos::kNom, {Process::kMorsem},
                  simple_occurrence("old", 0, "infobésité", Date(2026, 3, 2)));
  CorpusBatch batch;
  Article a;
  a.article_id = "new";
  a.journal = "J";
  a.fetch_date = Date(2026, 3, 4);
  a.paragraphs = {"Rien.", "L'infobésité et les « infobésités » encore.", "Rien.", "Infobésité."};
  batch.articles = {a};
  MonitorContext ctx;
  const auto added = kb.monitor(batch, ctx);
  ASSERT_EQ(added.size(), 2u);
  EXPECT_EQ(added[0].second.paragraph_index, 1u);
  EXPECT_TRUE(added[0].second.quoted);
  EXPECT_EQ(added[0].second.position, Position::kBeginning);
  EXPECT_EQ(added[1].second.position, Position::kEnd);
  const auto& text = a.paragraphs[1];
  EXPECT_EQ(text.substr(added[0].second.span.begin, added[0].second.span.size()), "infobésité");
  EXPECT_TRUE(kb.monitor(batch, ctx).empty());
  EXPECT_EQ(kb.entry(1)->occurrences.size(), 3u);
}

TEST(KnowledgeBase, QueryMatchesNaiveFilter) {
  KnowledgeBase kb(":memory:");
  const auto f = testing::populate_random_kb(kb, 80, 5);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 60; ++trial) {
    QueryFilter filter;
    if (rng() % 3 == 0) filter.regex = std::string("^mot[a-") + static_cast<char>('a' + rng() % 26) + "]";
    if (rng() % 3 == 0) filter.pos = static_cast<WordPos>(rng() % 10);
    if (rng() % 3 == 0) filter.process = static_cast<Process>(rng() % 4);
    if (rng() % 3 == 0) filter.journal = "La Gazette des Plaines";
    if (rng() % 3 == 0) filter.theme = "Sport";
    if (rng() % 3 == 0) filter.from = Date(2026, 2, 1);
    if (rng() % 3 == 0) filter.to = Date(2026, 3, 15);
    if (rng() % 3 == 0) filter.quoted = rng() % 2 == 0;
    filter.page_size = kMaxPageSize;
    const auto expected = oracle_query(f.written, filter);
    const auto page = kb.query(filter);
    EXPECT_EQ(page.total, expected.size());
    std::vector<std::pair<std::int64_t, std::size_t>> got;
    for (const auto& e : page.items) got.emplace_back(e.wid, e.occurrences.size());
    EXPECT_EQ(got, expected) << trial;

    filter.page_size = 1 + rng() % 7;
    std::vector<std::int64_t> concatenated;
    for (filter.page = 1;; ++filter.page) {
      const auto p = kb.query(filter);
      EXPECT_EQ(p.total, expected.size());
      if (p.items.empty()) break;
      for (const auto& e : p.items) concatenated.push_back(e.wid);
    }
    std::vector<std::int64_t> unpaged;
    for (const auto& [wid, n] : expected) unpaged.push_back(wid);
    EXPECT_EQ(concatenated, unpaged);
  }
  QueryFilter bad;
  bad.regex = "([";
  EXPECT_THROW(kb.query(bad), Error);
  bad = {};
  bad.page_size = kMaxPageSize + 1;
  EXPECT_THROW(kb.query(bad), Error);
  bad.page_size = 0;
  EXPECT_THROW(kb.query(bad), Error);
}

TEST(KnowledgeBase, StatsEqualRecounts) {
  KnowledgeBase kb(":memory:");
  const auto f = testing::populate_random_kb(kb, 60, 9);
  for (auto d : {StatsDimension::kPos, StatsDimension::kProcess, StatsDimension::kPosition, StatsDimension::kJournal,
                 StatsDimension::kTheme, StatsDimension::kThemeByMonth}) {
    std::map<std::pair<std::string, std::string>, std::size_t> got;
    for (const auto& r : kb.stats(d)) got[{r.key, r.bucket}] += r.count;
    EXPECT_EQ(got, testing::recount(f.written, d)) << to_string(d);
  }
}

TEST(KnowledgeBase, ContentHashAndExport) {
  testing::TempDir dir;
  KnowledgeBase kb(":memory:");
  const auto f = testing::populate_random_kb(kb, 10, 2);
  const auto h = kb.content_hash();
  kb.query({});
  kb.stats(StatsDimension::kTheme);
  kb.export_jsonl(dir / "kb.jsonl");
  EXPECT_EQ(kb.content_hash(), h);
  kb.add_occurrence(1, simple_occurrence("zz", 0, "mot"));
  EXPECT_NE(kb.content_hash(), h);

  const auto lines = testing::slurp(dir / "kb.jsonl");
  std::vector<NewWordEntry> read;
  std::size_t start = 0;
  for (std::size_t nl; (nl = lines.find('\n', start)) != std::string::npos; start = nl + 1) {
    read.push_back(nlohmann::json::parse(lines.substr(start, nl - start)).get<NewWordEntry>());
  }
  ASSERT_EQ(read.size(), f.written.size());
  for (std::size_t i = 0; i < read.size(); ++i) {
    EXPECT_EQ(read[i].wid, f.written[i].wid);
    EXPECT_EQ(read[i].word, f.written[i].word);
    EXPECT_EQ(read[i].processes, f.written[i].processes);
    EXPECT_EQ(read[i].occurrences, f.written[i].occurrences);
  }
}

}  // namespace
}  // namespace logoscope
