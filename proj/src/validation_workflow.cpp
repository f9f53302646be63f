// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "validation_workflow.hpp"

#include <charconv>
#include <set>

#include <spdlog/spdlog.h>

#include "error.hpp"
#include "file_util.hpp"

namespace logoscope {

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string_view> strip_trailing_empty(std::vector<std::string_view> fields, std::size_t keep) {
  while (fields.size() > keep && trim(fields.back()).empty()) fields.pop_back();
  return fields;
}

}  // namespace

std::optional<std::string> row_violation(const CandidateRow& row) {
  if (row.wid <= 0) return "wid must be positive";
  if (row.word.empty()) return "empty word";
  if (row.word.find(',') != std::string::npos) return "word contains a comma";
  if (!row.valid) {
    if (!row.pos.empty() || !row.proc.empty()) return "rejected row must leave pos and proc empty";
    return std::nullopt;
  }
  if (row.pos.empty() || row.proc.empty()) return "accepted row needs pos and proc";
  try {
    parse_word_pos(row.pos);
    parse_processes(row.proc);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

std::string format_candidate_row(const CandidateRow& row) {
  return std::to_string(row.wid) + ',' + row.word + ',' + (row.valid ? '1' : '0') + ',' + row.pos + ',' + row.proc;
}

std::string format_candidate_csv(const std::vector<CandidateRow>& rows) {
  std::string out(kCandidateCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += format_candidate_row(r);
    out += '\n';
  }
  return out;
}

ImportResult parse_decisions(std::string_view text, const Date& decision_date,
                             const std::optional<std::string>& annotator) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  auto lines = split_lines(text);
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  if (first == lines.size()) throw Error(ErrorCode::kParse, "HeaderMismatch", "empty decision file");
  auto header = strip_trailing_empty(split(trim(lines[first]), ','), 5);
  std::string joined;
  for (auto h : header) joined += (joined.empty() ? "" : ",") + std::string(trim(h));
  if (joined != kCandidateCsvHeader) {
    throw Error(ErrorCode::kParse, "HeaderMismatch", "expected '" + std::string(kCandidateCsvHeader) + "', got '" +
                                                         std::string(trim(lines[first])) + "'");
  }

  ImportResult result;
  std::set<std::int64_t> seen;
  for (std::size_t i = first + 1; i < lines.size(); ++i) {
    std::string_view line = trim(lines[i]);
    if (line.empty()) continue;
    std::size_t line_no = i + 1;
    auto fields = strip_trailing_empty(split(line, ','), 5);
    if (fields.size() < 3 || fields.size() > 5) {
      result.issues.push_back({line_no, 0, "RowInvalid", "expected 5 fields"});
      continue;
    }
    fields.resize(5, std::string_view());
    CandidateRow row;
    auto wid = parse_int(trim(fields[0]));
    std::string_view valid = trim(fields[2]);
    if (!wid || (valid != "0" && valid != "1")) {
      result.issues.push_back({line_no, wid.value_or(0), "RowInvalid", "bad wid or valid field"});
      continue;
    }
    row.wid = *wid;
    row.word = std::string(trim(fields[1]));
    row.valid = valid == "1";
    row.pos = std::string(trim(fields[3]));
    row.proc = std::string(trim(fields[4]));
    if (auto why = row_violation(row)) {
      result.issues.push_back({line_no, row.wid, "RowInvalid", *why});
      continue;
    }
    if (!seen.insert(row.wid).second) {
      result.issues.push_back({line_no, row.wid, "RowInvalid", "duplicate wid"});
      continue;
    }
    result.decisions.push_back({std::move(row), decision_date, annotator});
  }
  return result;
}

ImportResult import_decisions(const std::filesystem::path& path, const Date& decision_date,
                              const std::optional<std::string>& annotator) {
  return parse_decisions(read_file(path), decision_date, annotator);
}

std::string render_context_html(const Date& date, const std::vector<ExportItem>& items) {
  std::string out =
      "<!DOCTYPE html>\n<html lang=\"fr\">\n<head>\n<meta charset=\"utf-8\">\n<title>Candidates " + date.str() +
      "</title>\n<style>mark{background:#ffe08a}section{margin-bottom:1.5em}"
      ".src{color:#666;font-size:.85em}</style>\n</head>\n<body>\n<h1>Candidates " +
      date.str() + "</h1>\n";
  for (const auto& item : items) {
    out += "<section id=\"w" + std::to_string(item.wid) + "\">\n<h2>" + std::to_string(item.wid) + " " +
           html_escape(item.word) + "</h2>\n";
    for (const auto& c : item.contexts) {
      out += "<p><span class=\"src\">" + html_escape(c.journal) + " " + html_escape(c.article_id) + " #" +
             std::to_string(c.paragraph_index) + "</span><br>";
      std::size_t at = 0;
      for (const auto& m : c.marks) {
        if (m.begin < at || m.end > c.text.size()) continue;
        out += html_escape(std::string_view(c.text).substr(at, m.begin - at));
        out += "<mark>" + html_escape(std::string_view(c.text).substr(m.begin, m.size())) + "</mark>";
        at = m.end;
      }
      out += html_escape(std::string_view(c.text).substr(at));
      out += "</p>\n";
    }
    out += "</section>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

void export_candidates(const std::filesystem::path& dir, const Date& date, const std::vector<ExportItem>& items) {
  std::vector<CandidateRow> rows;
  rows.reserve(items.size());
  for (const auto& item : items) rows.push_back({item.wid, item.word, false, "", ""});
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / (date.str() + ".csv"), format_candidate_csv(rows));
  write_file_atomic(dir / (date.str() + ".html"), render_context_html(date, items));
}

ApplyReport apply_decisions(const std::vector<Decision>& decisions, KnowledgeBase& kb, ExclusionList& lexicon,
                            const DecisionContext& ctx) {
  ApplyReport report;
  std::map<Date, std::set<std::string>> validated;
  std::map<Date, std::set<std::string>> rejected;

  for (const auto& d : decisions) {
    const auto& row = d.row;
    if (kb.decision(row.wid)) continue;
    if (auto why = row_violation(row)) {
      report.issues.push_back({0, row.wid, "RowInvalid", *why});
      continue;
    }
    auto surface = ctx.surface_of ? ctx.surface_of(row.wid) : std::nullopt;
    if (!surface) {
      report.issues.push_back({0, row.wid, "UnknownWid", "no candidate registered under this wid"});
      continue;
    }
    if (*surface != row.word) {
      report.issues.push_back({0, row.wid, "RowInvalid", "wid belongs to '" + *surface + "'"});
      continue;
    }

    if (row.valid) {
      std::optional<Occurrence> first = ctx.document ? ctx.document(row.wid, row.word) : std::nullopt;
      if (!first) {
        report.issues.push_back({0, row.wid, "MissingContext", "no occurrence found for " + row.word});
        continue;
      }
      try {
        kb.create_entry(row.word, parse_word_pos(row.pos), parse_processes(row.proc), *first, row.wid);
        ++report.entries_created;
      } catch (const Error& e) {
        if (e.kind() != "DuplicateWord" && e.kind() != "DuplicateWid") throw;
        report.warnings.push_back(std::string(e.what()));
        spdlog::warn("{}", e.what());
      }
      validated[d.decision_date].insert(row.word);
    } else {
      ++report.rejected;
      rejected[d.decision_date].insert(row.word);
    }
    kb.record_decision({row.wid, row.word, row.valid, row.pos, row.proc, d.decision_date, d.annotator});
    report.decided_wids.push_back(row.wid);
  }

  for (const auto& [date, forms] : validated) {
    lexicon.extend(forms, "validated", date);
    report.lexicon_additions += forms.size();
  }
  for (const auto& [date, forms] : rejected) {
    lexicon.extend(forms, "rejected", date);
    report.lexicon_additions += forms.size();
  }
  return report;
}

}  // namespace logoscope
