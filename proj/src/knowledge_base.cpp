// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "knowledge_base.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <regex>
#include <unordered_map>

#include "error.hpp"
#include "file_util.hpp"
#include "utf8.hpp"

namespace logoscope {

namespace {

constexpr std::array<std::string_view, 10> kPosCodes = {"ADJ", "ADV", "GER", "INT", "NOM",
                                                        "NPR", "PPA", "PPR", "PRO", "VER"};
constexpr std::array<std::string_view, 4> kProcessCodes = {"MORSEM", "SYNSEM", "MORPHO", "EMP"};
constexpr std::array<std::string_view, 6> kDimensionNames = {"pos",     "process", "position",
                                                             "journal", "theme",   "theme_by_month"};

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS words (
  wid INTEGER PRIMARY KEY,
  word TEXT NOT NULL UNIQUE,
  pos TEXT NOT NULL,
  processes TEXT NOT NULL,
  created_on TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS articles (
  article_id TEXT PRIMARY KEY,
  journal TEXT NOT NULL,
  date TEXT NOT NULL,
  author TEXT
);
CREATE TABLE IF NOT EXISTS occurrences (
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  wid INTEGER NOT NULL REFERENCES words(wid),
  article_id TEXT NOT NULL REFERENCES articles(article_id),
  paragraph_index INTEGER NOT NULL,
  position TEXT NOT NULL,
  paragraph_text TEXT NOT NULL,
  span_begin INTEGER NOT NULL,
  span_end INTEGER NOT NULL,
  quoted INTEGER NOT NULL,
  top_themes TEXT NOT NULL,
  medium TEXT NOT NULL,
  editorial_style TEXT NOT NULL,
  UNIQUE (wid, article_id, paragraph_index)
);
CREATE TABLE IF NOT EXISTS decisions (
  wid INTEGER PRIMARY KEY,
  word TEXT NOT NULL,
  valid INTEGER NOT NULL,
  pos TEXT NOT NULL,
  proc TEXT NOT NULL,
  decision_date TEXT NOT NULL,
  annotator TEXT
);
)sql";

class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      throw Error(ErrorCode::kIo, "Database", sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& bind(int i, std::int64_t v) {
    check(sqlite3_bind_int64(stmt_, i, v));
    return *this;
  }
  Statement& bind(int i, std::string_view v) {
    check(sqlite3_bind_text(stmt_, i, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT));
    return *this;
  }
  Statement& bind(int i, const std::string& v) { return bind(i, std::string_view(v)); }
  Statement& bind(int i, const char* v) { return bind(i, std::string_view(v)); }
  Statement& bind(int i, const std::optional<std::string>& v) {
    if (v) return bind(i, std::string_view(*v));
    check(sqlite3_bind_null(stmt_, i));
    return *this;
  }

  // True while a row is available.
  bool step() {
    int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    if (rc == SQLITE_CONSTRAINT) throw Error(ErrorCode::kConflict, "Constraint", sqlite3_errmsg(db_));
    throw Error(ErrorCode::kIo, "Database", sqlite3_errmsg(db_));
  }

  std::int64_t integer(int col) const { return sqlite3_column_int64(stmt_, col); }
  std::string text(int col) const {
    auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt_, col));
    return p ? std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col))) : std::string();
  }
  std::optional<std::string> optional_text(int col) const {
    if (sqlite3_column_type(stmt_, col) == SQLITE_NULL) return std::nullopt;
    return text(col);
  }
  int columns() const { return sqlite3_column_count(stmt_); }
  bool is_null(int col) const { return sqlite3_column_type(stmt_, col) == SQLITE_NULL; }

 private:
  void check(int rc) {
    if (rc != SQLITE_OK) throw Error(ErrorCode::kIo, "Database", sqlite3_errmsg(db_));
  }
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

std::string themes_to_text(const std::vector<std::string>& themes) { return nlohmann::json(themes).dump(); }

std::vector<std::string> themes_from_text(const std::string& text) {
  return nlohmann::json::parse(text).get<std::vector<std::string>>();
}

void check_occurrence(const Occurrence& o) {
  if (o.top_themes.size() > 3) {
    throw Error(ErrorCode::kInvariant, "TooManyThemes", o.article_id);
  }
  if (o.span.end < o.span.begin || o.span.end > o.paragraph_text.size()) {
    throw Error(ErrorCode::kInvariant, "BadSpan", o.article_id);
  }
}

constexpr const char* kOccurrenceSelect =
    "SELECT o.wid, o.article_id, a.journal, a.date, a.author, o.position, o.paragraph_index, "
    "o.paragraph_text, o.span_begin, o.span_end, o.quoted, o.top_themes, o.medium, o.editorial_style "
    "FROM occurrences o JOIN articles a ON a.article_id = o.article_id ";

Occurrence read_occurrence(const Statement& s) {
  Occurrence o;
  o.article_id = s.text(1);
  o.journal = s.text(2);
  o.date = Date::parse_or_throw(s.text(3));
  o.author = s.optional_text(4);
  o.position = parse_position(s.text(5));
  o.paragraph_index = static_cast<std::size_t>(s.integer(6));
  o.paragraph_text = s.text(7);
  o.span = {static_cast<std::size_t>(s.integer(8)), static_cast<std::size_t>(s.integer(9))};
  o.quoted = s.integer(10) != 0;
  o.top_themes = themes_from_text(s.text(11));
  o.medium = s.text(12);
  o.editorial_style = s.text(13);
  return o;
}

void sort_occurrences(std::vector<Occurrence>& occurrences) {
  std::sort(occurrences.begin(), occurrences.end(), [](const Occurrence& a, const Occurrence& b) {
    return std::tie(a.date, a.article_id, a.paragraph_index) < std::tie(b.date, b.article_id, b.paragraph_index);
  });
}

}  // namespace

std::string_view to_string(WordPos pos) { return kPosCodes[static_cast<std::size_t>(pos)]; }
std::string_view to_string(Process process) { return kProcessCodes[static_cast<std::size_t>(process)]; }

WordPos parse_word_pos(std::string_view code) {
  for (std::size_t i = 0; i < kPosCodes.size(); ++i) {
    if (kPosCodes[i] == code) return static_cast<WordPos>(i);
  }
  throw Error(ErrorCode::kInvalidArgument, "InvalidPos", std::string(code));
}

Process parse_process(std::string_view code) {
  for (std::size_t i = 0; i < kProcessCodes.size(); ++i) {
    if (kProcessCodes[i] == code) return static_cast<Process>(i);
  }
  throw Error(ErrorCode::kInvalidArgument, "InvalidProcess", std::string(code));
}

std::set<Process> parse_processes(std::string_view text) {
  std::set<Process> out;
  for (auto part : split(text, '+')) out.insert(parse_process(trim(part)));
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "InvalidProcess", "empty process set");
  return out;
}

std::string join_processes(const std::set<Process>& processes) {
  std::string out;
  for (auto p : processes) {
    if (!out.empty()) out += '+';
    out += to_string(p);
  }
  return out;
}

StatsDimension parse_stats_dimension(std::string_view name) {
  for (std::size_t i = 0; i < kDimensionNames.size(); ++i) {
    if (kDimensionNames[i] == name) return static_cast<StatsDimension>(i);
  }
  throw Error(ErrorCode::kInvalidArgument, "BadDimension", std::string(name));
}

std::string_view to_string(StatsDimension d) { return kDimensionNames[static_cast<std::size_t>(d)]; }

std::vector<std::string> match_variants(std::string_view word) {
  std::string lower = utf8::to_lower(word);
  std::vector<std::string> out{lower, lower + "s", lower + "x"};
  if (lower.size() > 2 && (lower.back() == 's' || lower.back() == 'x')) {
    out.push_back(lower.substr(0, lower.size() - 1));
  }
  return out;
}

bool word_matches(std::string_view word, std::string_view token) {
  if (word == token) return true;
  auto variants = match_variants(word);
  return std::find(variants.begin(), variants.end(), utf8::to_lower(token)) != variants.end();
}

std::optional<CharSpan> find_word(std::string_view paragraph, std::string_view word) {
  for (const auto& token : tokenize(paragraph)) {
    std::size_t cut = elision_prefix_length(token.surface);
    std::string_view rest = std::string_view(token.surface).substr(cut);
    if (word_matches(word, rest)) return CharSpan{token.span.begin + cut, token.span.end};
  }
  return std::nullopt;
}

Occurrence document_occurrence(const Article& article, std::size_t paragraph_index, CharSpan span,
                               const std::vector<std::string>& top_themes, const MonitorContext& ctx) {
  if (paragraph_index >= article.paragraphs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "IndexOutOfRange", article.article_id);
  }
  Occurrence o;
  o.article_id = article.article_id;
  o.journal = article.journal;
  o.date = article.effective_date();
  o.author = article.author;
  o.position = position_of(paragraph_index, article.paragraphs.size());
  o.paragraph_index = paragraph_index;
  o.paragraph_text = article.paragraphs[paragraph_index];
  o.span = span;
  o.quoted = detect_quoted(o.paragraph_text, span);
  o.top_themes = top_themes;
  if (o.top_themes.size() > 3) o.top_themes.resize(3);
  auto style = ctx.editorial_styles.find(article.journal);
  o.editorial_style = style != ctx.editorial_styles.end() ? style->second : article.journal;
  return o;
}

KnowledgeBase::KnowledgeBase(const std::string& path) {
  if (sqlite3_open_v2(path.c_str(), &db_, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX,
                      nullptr) != SQLITE_OK) {
    std::string message = db_ ? sqlite3_errmsg(db_) : "cannot open";
    sqlite3_close(db_);
    throw Error(ErrorCode::kIo, "Database", path + ": " + message);
  }
  sqlite3_busy_timeout(db_, 5000);
  exec("PRAGMA foreign_keys = ON;");
  exec(kSchema);
}

KnowledgeBase::~KnowledgeBase() { sqlite3_close(db_); }

void KnowledgeBase::exec(const char* sql) {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string message = err ? err : "exec failed";
    sqlite3_free(err);
    throw Error(ErrorCode::kIo, "Database", message);
  }
}

void KnowledgeBase::upsert_article(const Occurrence& o) {
  Statement s(db_, "INSERT OR IGNORE INTO articles (article_id, journal, date, author) VALUES (?, ?, ?, ?)");
  s.bind(1, std::string_view(o.article_id)).bind(2, std::string_view(o.journal)).bind(3, o.date.str());
  s.bind(4, o.author);
  s.step();
}

std::int64_t KnowledgeBase::create_entry(const std::string& word, WordPos pos, const std::set<Process>& processes,
                                         const Occurrence& first_occurrence, std::int64_t wid) {
  if (static_cast<std::size_t>(pos) >= kPosCodes.size()) {
    throw Error(ErrorCode::kInvalidArgument, "InvalidPos", std::to_string(static_cast<int>(pos)));
  }
  if (processes.empty()) throw Error(ErrorCode::kInvalidArgument, "InvalidProcess", "empty process set");
  for (auto p : processes) {
    if (static_cast<std::size_t>(p) >= kProcessCodes.size()) {
      throw Error(ErrorCode::kInvalidArgument, "InvalidProcess", std::to_string(static_cast<int>(p)));
    }
  }
  check_occurrence(first_occurrence);
  if (entry_by_word(word)) throw Error(ErrorCode::kConflict, "DuplicateWord", word);
  if (wid != 0 && entry(wid)) throw Error(ErrorCode::kConflict, "DuplicateWid", std::to_string(wid));

  exec("BEGIN IMMEDIATE;");
  try {
    if (wid == 0) {
      Statement next(db_, "SELECT COALESCE(MAX(wid), 0) + 1 FROM words");
      next.step();
      wid = next.integer(0);
    }
    Statement s(db_, "INSERT INTO words (wid, word, pos, processes, created_on) VALUES (?, ?, ?, ?, ?)");
    s.bind(1, wid).bind(2, std::string_view(word)).bind(3, to_string(pos)).bind(4, join_processes(processes));
    s.bind(5, first_occurrence.date.str());
    s.step();
    add_occurrence(wid, first_occurrence);
    exec("COMMIT;");
  } catch (...) {
    exec("ROLLBACK;");
    throw;
  }
  return wid;
}

bool KnowledgeBase::add_occurrence(std::int64_t wid, const Occurrence& o) {
  check_occurrence(o);
  upsert_article(o);
  Statement s(db_,
              "INSERT OR IGNORE INTO occurrences (wid, article_id, paragraph_index, position, paragraph_text, "
              "span_begin, span_end, quoted, top_themes, medium, editorial_style) "
              "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)");
  s.bind(1, wid).bind(2, std::string_view(o.article_id)).bind(3, static_cast<std::int64_t>(o.paragraph_index));
  s.bind(4, to_string(o.position)).bind(5, std::string_view(o.paragraph_text));
  s.bind(6, static_cast<std::int64_t>(o.span.begin)).bind(7, static_cast<std::int64_t>(o.span.end));
  s.bind(8, std::int64_t{o.quoted ? 1 : 0}).bind(9, themes_to_text(o.top_themes));
  s.bind(10, std::string_view(o.medium)).bind(11, std::string_view(o.editorial_style));
  s.step();
  return sqlite3_changes(db_) > 0;
}

std::vector<std::pair<std::int64_t, Occurrence>> KnowledgeBase::monitor(const CorpusBatch& batch,
                                                                        const MonitorContext& ctx) {
  std::unordered_map<std::string, std::vector<std::int64_t>> lookup;
  {
    Statement s(db_, "SELECT wid, word FROM words ORDER BY wid");
    while (s.step()) {
      for (auto& v : match_variants(s.text(1))) lookup[v].push_back(s.integer(0));
    }
  }
  std::vector<std::pair<std::int64_t, Occurrence>> added;
  if (lookup.empty()) return added;

  for (const auto& article : batch.articles) {
    std::optional<std::vector<std::string>> themes;
    for (std::size_t p = 0; p < article.paragraphs.size(); ++p) {
      const auto& text = article.paragraphs[p];
      std::map<std::int64_t, std::pair<CharSpan, bool>> hits;  // wid -> first span, quoted
      for (const auto& token : tokenize(text)) {
        std::size_t cut = elision_prefix_length(token.surface);
        auto found = lookup.find(utf8::to_lower(std::string_view(token.surface).substr(cut)));
        if (found == lookup.end()) continue;
        CharSpan span{token.span.begin + cut, token.span.end};
        bool quoted = detect_quoted(text, span);
        for (auto wid : found->second) {
          auto [it, fresh] = hits.try_emplace(wid, span, quoted);
          if (!fresh) it->second.second = it->second.second || quoted;
        }
      }
      for (const auto& [wid, hit] : hits) {
        if (!themes) {
          themes = ctx.themes && ctx.tag ? analyze_article(*ctx.themes, article, ctx.tag).top3
                                         : std::vector<std::string>{};
        }
        Occurrence o = document_occurrence(article, p, hit.first, *themes, ctx);
        o.quoted = hit.second;
        if (add_occurrence(wid, o)) added.emplace_back(wid, std::move(o));
      }
    }
  }
  return added;
}

std::optional<NewWordEntry> KnowledgeBase::entry(std::int64_t wid) const {
  NewWordEntry e;
  {
    Statement s(db_, "SELECT wid, word, pos, processes, created_on FROM words WHERE wid = ?");
    s.bind(1, wid);
    if (!s.step()) return std::nullopt;
    e.wid = s.integer(0);
    e.word = s.text(1);
    e.pos = parse_word_pos(s.text(2));
    e.processes = parse_processes(s.text(3));
    e.created_on = Date::parse_or_throw(s.text(4));
  }
  Statement s(db_, (std::string(kOccurrenceSelect) + "WHERE o.wid = ?").c_str());
  s.bind(1, wid);
  while (s.step()) e.occurrences.push_back(read_occurrence(s));
  sort_occurrences(e.occurrences);
  return e;
}

std::optional<NewWordEntry> KnowledgeBase::entry_by_word(std::string_view word) const {
  Statement s(db_, "SELECT wid FROM words WHERE word = ?");
  s.bind(1, word);
  if (!s.step()) return std::nullopt;
  return entry(s.integer(0));
}

std::vector<NewWordEntry> KnowledgeBase::all_entries() const {
  std::vector<NewWordEntry> entries;
  std::unordered_map<std::int64_t, std::size_t> index;
  {
    Statement s(db_, "SELECT wid, word, pos, processes, created_on FROM words");
    while (s.step()) {
      NewWordEntry e;
      e.wid = s.integer(0);
      e.word = s.text(1);
      e.pos = parse_word_pos(s.text(2));
      e.processes = parse_processes(s.text(3));
      e.created_on = Date::parse_or_throw(s.text(4));
      index[e.wid] = entries.size();
      entries.push_back(std::move(e));
    }
  }
  Statement s(db_, kOccurrenceSelect);
  while (s.step()) {
    auto it = index.find(s.integer(0));
    if (it != index.end()) entries[it->second].occurrences.push_back(read_occurrence(s));
  }
  for (auto& e : entries) sort_occurrences(e.occurrences);
  std::sort(entries.begin(), entries.end(), [](const NewWordEntry& a, const NewWordEntry& b) {
    if (a.created_on != b.created_on) return a.created_on > b.created_on;
    return a.wid < b.wid;
  });
  return entries;
}

std::size_t KnowledgeBase::size() const {
  Statement s(db_, "SELECT COUNT(*) FROM words");
  s.step();
  return static_cast<std::size_t>(s.integer(0));
}

QueryPage KnowledgeBase::query(const QueryFilter& filter) const {
  if (filter.page_size == 0 || filter.page_size > kMaxPageSize) {
    throw Error(ErrorCode::kInvalidArgument, "BadPageSize", std::to_string(filter.page_size));
  }
  if (filter.page == 0) throw Error(ErrorCode::kInvalidArgument, "BadPage", "pages start at 1");
  std::optional<std::regex> pattern;
  if (filter.regex) {
    try {
      pattern.emplace(*filter.regex, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw Error(ErrorCode::kInvalidArgument, "BadRegex", *filter.regex + ": " + e.what());
    }
  }

  std::vector<NewWordEntry> kept;
  for (auto& e : all_entries()) {
    if (pattern && !std::regex_search(e.word, *pattern)) continue;
    if (filter.pos && e.pos != *filter.pos) continue;
    if (filter.process && !e.processes.contains(*filter.process)) continue;
    std::erase_if(e.occurrences, [&](const Occurrence& o) {
      if (filter.journal && o.journal != *filter.journal) return true;
      if (filter.theme &&
          std::find(o.top_themes.begin(), o.top_themes.end(), *filter.theme) == o.top_themes.end()) {
        return true;
      }
      if (filter.from && o.date < *filter.from) return true;
      if (filter.to && o.date > *filter.to) return true;
      if (filter.quoted && o.quoted != *filter.quoted) return true;
      return false;
    });
    if (!e.occurrences.empty()) kept.push_back(std::move(e));
  }

  QueryPage page;
  page.total = kept.size();
  page.page = filter.page;
  page.page_size = filter.page_size;
  std::size_t first = (filter.page - 1) * filter.page_size;
  if (first < kept.size()) {
    std::size_t last = std::min(kept.size(), first + filter.page_size);
    page.items.assign(std::make_move_iterator(kept.begin() + static_cast<std::ptrdiff_t>(first)),
                      std::make_move_iterator(kept.begin() + static_cast<std::ptrdiff_t>(last)));
  }
  return page;
}

std::vector<StatsRow> KnowledgeBase::stats(StatsDimension dimension) const {
  std::map<std::pair<std::string, std::string>, std::size_t> counts;  // (bucket, key)
  for (const auto& e : all_entries()) {
    switch (dimension) {
      case StatsDimension::kPos:
        ++counts[{"", std::string(to_string(e.pos))}];
        break;
      case StatsDimension::kProcess:
        for (auto p : e.processes) ++counts[{"", std::string(to_string(p))}];
        break;
      default:
        for (const auto& o : e.occurrences) {
          if (dimension == StatsDimension::kPosition) {
            ++counts[{"", std::string(to_string(o.position))}];
          } else if (dimension == StatsDimension::kJournal) {
            ++counts[{"", o.journal}];
          } else {
            std::string bucket = dimension == StatsDimension::kThemeByMonth ? o.date.month_key() : "";
            for (const auto& t : o.top_themes) ++counts[{bucket, t}];
          }
        }
    }
  }
  std::vector<StatsRow> rows;
  for (const auto& [k, n] : counts) rows.push_back({k.second, k.first, n});
  return rows;
}

void KnowledgeBase::record_decision(const StoredDecision& d) {
  Statement s(db_,
              "INSERT OR REPLACE INTO decisions (wid, word, valid, pos, proc, decision_date, annotator) "
              "VALUES (?, ?, ?, ?, ?, ?, ?)");
  s.bind(1, d.wid).bind(2, std::string_view(d.word)).bind(3, std::int64_t{d.valid ? 1 : 0});
  s.bind(4, std::string_view(d.pos)).bind(5, std::string_view(d.proc)).bind(6, d.decision_date.str());
  s.bind(7, d.annotator);
  s.step();
}

namespace {

StoredDecision read_decision(const Statement& s) {
  StoredDecision d;
  d.wid = s.integer(0);
  d.word = s.text(1);
  d.valid = s.integer(2) != 0;
  d.pos = s.text(3);
  d.proc = s.text(4);
  d.decision_date = Date::parse_or_throw(s.text(5));
  d.annotator = s.optional_text(6);
  return d;
}

}  // namespace

std::optional<StoredDecision> KnowledgeBase::decision(std::int64_t wid) const {
  Statement s(db_, "SELECT wid, word, valid, pos, proc, decision_date, annotator FROM decisions WHERE wid = ?");
  s.bind(1, wid);
  if (!s.step()) return std::nullopt;
  return read_decision(s);
}

std::vector<StoredDecision> KnowledgeBase::decisions() const {
  Statement s(db_, "SELECT wid, word, valid, pos, proc, decision_date, annotator FROM decisions ORDER BY wid");
  std::vector<StoredDecision> out;
  while (s.step()) out.push_back(read_decision(s));
  return out;
}

void KnowledgeBase::export_jsonl(const std::filesystem::path& path) const {
  auto entries = all_entries();
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.wid < b.wid; });
  std::string out;
  for (const auto& e : entries) {
    out += nlohmann::json(e).dump();
    out += '\n';
  }
  write_file_atomic(path, out);
}

std::string KnowledgeBase::content_hash() const {
  std::string digest;
  for (const char* sql : {"SELECT * FROM words ORDER BY wid", "SELECT * FROM articles ORDER BY article_id",
                          "SELECT * FROM occurrences ORDER BY id", "SELECT * FROM decisions ORDER BY wid"}) {
    Statement s(db_, sql);
    std::string rows;
    while (s.step()) {
      for (int c = 0; c < s.columns(); ++c) {
        rows += s.is_null(c) ? std::string("\x01") : s.text(c);
        rows += '\x1f';
      }
      rows += '\x1e';
    }
    digest += hex64(fnv1a64(rows));
  }
  return digest;
}

void to_json(nlohmann::json& j, const Occurrence& o) {
  j = nlohmann::json{{"article_id", o.article_id},
                     {"journal", o.journal},
                     {"date", o.date.str()},
                     {"author", o.author ? nlohmann::json(*o.author) : nlohmann::json(nullptr)},
                     {"position", to_string(o.position)},
                     {"paragraph_index", o.paragraph_index},
                     {"paragraph_text", o.paragraph_text},
                     {"char_span", {o.span.begin, o.span.end}},
                     {"quoted", o.quoted},
                     {"top_themes", o.top_themes},
                     {"medium", o.medium},
                     {"editorial_style", o.editorial_style}};
}

void from_json(const nlohmann::json& j, Occurrence& o) {
  o.article_id = j.at("article_id").get<std::string>();
  o.journal = j.at("journal").get<std::string>();
  o.date = Date::parse_or_throw(j.at("date").get<std::string>());
  if (j.contains("author") && !j.at("author").is_null()) o.author = j.at("author").get<std::string>();
  o.position = parse_position(j.at("position").get<std::string>());
  o.paragraph_index = j.at("paragraph_index").get<std::size_t>();
  o.paragraph_text = j.at("paragraph_text").get<std::string>();
  o.span = {j.at("char_span").at(0).get<std::size_t>(), j.at("char_span").at(1).get<std::size_t>()};
  o.quoted = j.at("quoted").get<bool>();
  o.top_themes = j.at("top_themes").get<std::vector<std::string>>();
  o.medium = j.value("medium", std::string(kMediumGraphic));
  o.editorial_style = j.value("editorial_style", std::string());
}

void to_json(nlohmann::json& j, const NewWordEntry& e) {
  std::vector<std::string> processes;
  for (auto p : e.processes) processes.emplace_back(to_string(p));
  j = nlohmann::json{{"wid", e.wid},
                     {"word", e.word},
                     {"pos", to_string(e.pos)},
                     {"processes", processes},
                     {"created_on", e.created_on.str()},
                     {"occurrences", e.occurrences}};
}

void from_json(const nlohmann::json& j, NewWordEntry& e) {
  e.wid = j.at("wid").get<std::int64_t>();
  e.word = j.at("word").get<std::string>();
  e.pos = parse_word_pos(j.at("pos").get<std::string>());
  e.processes.clear();
  for (const auto& p : j.at("processes")) e.processes.insert(parse_process(p.get<std::string>()));
  e.created_on = Date::parse_or_throw(j.at("created_on").get<std::string>());
  e.occurrences = j.at("occurrences").get<std::vector<Occurrence>>();
}

}  // namespace logoscope
