// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "article.hpp"
#include "date.hpp"
#include "segmenter.hpp"
#include "tagger.hpp"
#include "theme_analyzer.hpp"

struct sqlite3;

namespace logoscope {

enum class WordPos { kAdj, kAdv, kGer, kInt, kNom, kNpr, kPpa, kPpr, kPro, kVer };
enum class Process { kMorsem, kSynsem, kMorpho, kEmp };

std::string_view to_string(WordPos pos);
std::string_view to_string(Process process);
WordPos parse_word_pos(std::string_view code);   // throws InvalidPos
Process parse_process(std::string_view code);    // throws InvalidProcess
// "EMP+MORSEM" (or a single code). Throws InvalidProcess on empty or unknown.
std::set<Process> parse_processes(std::string_view text);
std::string join_processes(const std::set<Process>& processes);

inline constexpr std::string_view kMediumGraphic = "graphic";

struct Occurrence {
  std::string article_id;
  std::string journal;
  Date date;
  std::optional<std::string> author;
  Position position = Position::kMiddle;
  std::size_t paragraph_index = 0;
  std::string paragraph_text;
  CharSpan span;  // first match of the word in the paragraph
  bool quoted = false;
  std::vector<std::string> top_themes;
  std::string medium = std::string(kMediumGraphic);
  std::string editorial_style;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct NewWordEntry {
  std::int64_t wid = 0;
  std::string word;
  WordPos pos = WordPos::kNom;
  std::set<Process> processes;
  Date created_on;
  std::vector<Occurrence> occurrences;  // by date, article, paragraph
};

struct QueryFilter {
  std::optional<std::string> regex;
  std::optional<WordPos> pos;
  std::optional<Process> process;
  std::optional<std::string> journal;
  std::optional<std::string> theme;
  std::optional<Date> from;
  std::optional<Date> to;
  std::optional<bool> quoted;
  std::size_t page = 1;
  std::size_t page_size = 50;
};

inline constexpr std::size_t kMaxPageSize = 500;

struct QueryPage {
  std::vector<NewWordEntry> items;
  std::size_t total = 0;
  std::size_t page = 1;
  std::size_t page_size = 50;
};

enum class StatsDimension { kPos, kProcess, kPosition, kJournal, kTheme, kThemeByMonth };
StatsDimension parse_stats_dimension(std::string_view name);  // throws BadDimension
std::string_view to_string(StatsDimension d);

struct StatsRow {
  std::string key;
  std::string bucket;  // month for theme_by_month, empty otherwise
  std::size_t count = 0;

  friend bool operator==(const StatsRow&, const StatsRow&) = default;
};

struct StoredDecision {
  std::int64_t wid = 0;
  std::string word;
  bool valid = false;
  std::string pos;
  std::string proc;
  Date decision_date;
  std::optional<std::string> annotator;
};

// Word matching used when monitoring and when checking paragraph_text: exact,
// lowercase, or plural/singular of the final hyphen component.
bool word_matches(std::string_view word, std::string_view token);
std::vector<std::string> match_variants(std::string_view word);
// First token span of `paragraph` matching `word`.
std::optional<CharSpan> find_word(std::string_view paragraph, std::string_view word);

struct MonitorContext {
  const ThemeRegister* themes = nullptr;
  TagFn tag;
  std::map<std::string, std::string> editorial_styles;  // journal -> style
};

// Fully documented occurrence of the token at `span` in article paragraph
// `paragraph_index`.
Occurrence document_occurrence(const Article& article, std::size_t paragraph_index, CharSpan span,
                               const std::vector<std::string>& top_themes, const MonitorContext& ctx);

class KnowledgeBase {
 public:
  // Opens or creates the database file; ":memory:" works too.
  explicit KnowledgeBase(const std::string& path);
  ~KnowledgeBase();
  KnowledgeBase(const KnowledgeBase&) = delete;
  KnowledgeBase& operator=(const KnowledgeBase&) = delete;

  // Throws DuplicateWord, InvalidPos, InvalidProcess. A wid of 0 picks the
  // next free one.
  std::int64_t create_entry(const std::string& word, WordPos pos, const std::set<Process>& processes,
                            const Occurrence& first_occurrence, std::int64_t wid = 0);

  // False when (wid, article_id, paragraph_index) is already stored.
  bool add_occurrence(std::int64_t wid, const Occurrence& occurrence);

  // Appends every new occurrence of a tracked word in the batch.
  std::vector<std::pair<std::int64_t, Occurrence>> monitor(const CorpusBatch& batch, const MonitorContext& ctx);

  std::optional<NewWordEntry> entry(std::int64_t wid) const;
  std::optional<NewWordEntry> entry_by_word(std::string_view word) const;
  std::vector<NewWordEntry> all_entries() const;
  std::size_t size() const;

  QueryPage query(const QueryFilter& filter) const;  // BadRegex, BadPageSize
  std::vector<StatsRow> stats(StatsDimension dimension) const;

  void record_decision(const StoredDecision& decision);
  std::optional<StoredDecision> decision(std::int64_t wid) const;
  std::vector<StoredDecision> decisions() const;

  // kb-export.jsonl: one entry per line with nested occurrences.
  void export_jsonl(const std::filesystem::path& path) const;

  // Digest of every table; equal digests mean equal content.
  std::string content_hash() const;

 private:
  void exec(const char* sql);
  void upsert_article(const Occurrence& occurrence);

  sqlite3* db_ = nullptr;
};

void to_json(nlohmann::json& j, const Occurrence& o);
void to_json(nlohmann::json& j, const NewWordEntry& e);
void from_json(const nlohmann::json& j, Occurrence& o);
void from_json(const nlohmann::json& j, NewWordEntry& e);

}  // namespace logoscope
