// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "date.hpp"
#include "knowledge_base.hpp"
#include "lexicon.hpp"
#include "segmenter.hpp"

namespace logoscope {

inline constexpr std::string_view kCandidateCsvHeader = "wid,word,valid,pos,proc";

struct CandidateRow {
  std::int64_t wid = 0;
  std::string word;
  bool valid = false;
  std::string pos;   // code or empty
  std::string proc;  // plus-separated codes or empty

  friend bool operator==(const CandidateRow&, const CandidateRow&) = default;
};

// Reason the row breaks the valid/pos/proc invariant, or nullopt.
std::optional<std::string> row_violation(const CandidateRow& row);

std::string format_candidate_row(const CandidateRow& row);
std::string format_candidate_csv(const std::vector<CandidateRow>& rows);

struct RowIssue {
  std::size_t line = 0;  // 1-based line in the file, 0 when not file-based
  std::int64_t wid = 0;
  std::string kind;      // RowInvalid, UnknownWid, MissingContext, DuplicateWord
  std::string message;
};

struct Decision {
  CandidateRow row;
  Date decision_date;
  std::optional<std::string> annotator;
};

struct ImportResult {
  std::vector<Decision> decisions;
  std::vector<RowIssue> issues;
};

// Parses a decision CSV. Throws HeaderMismatch; malformed rows are reported
// and skipped.
ImportResult parse_decisions(std::string_view text, const Date& decision_date,
                             const std::optional<std::string>& annotator = std::nullopt);
ImportResult import_decisions(const std::filesystem::path& path, const Date& decision_date,
                              const std::optional<std::string>& annotator = std::nullopt);

struct ContextSnippet {
  std::string article_id;
  std::string journal;
  std::size_t paragraph_index = 0;
  std::string text;
  std::vector<CharSpan> marks;  // byte offsets, sorted and disjoint
};

struct ExportItem {
  std::int64_t wid = 0;
  std::string word;
  double score = 0.0;
  std::vector<ContextSnippet> contexts;
};

std::string render_context_html(const Date& date, const std::vector<ExportItem>& items);

// Writes <dir>/<date>.csv and <dir>/<date>.html; rows in the given order.
void export_candidates(const std::filesystem::path& dir, const Date& date, const std::vector<ExportItem>& items);

struct ApplyReport {
  std::size_t entries_created = 0;
  std::size_t rejected = 0;
  std::size_t lexicon_additions = 0;
  std::vector<RowIssue> issues;
  std::vector<std::string> warnings;
  std::vector<std::int64_t> decided_wids;

  bool changed() const { return entries_created + rejected + lexicon_additions > 0; }
};

struct DecisionContext {
  // Surface registered under a wid, if any.
  std::function<std::optional<std::string>(std::int64_t)> surface_of;
  // First fully documented occurrence of a validated word.
  std::function<std::optional<Occurrence>(std::int64_t, const std::string&)> document;
};

// Creates KB entries for accepted words and extends the exclusion list with
// every decided form. Decisions already recorded for a wid are skipped.
ApplyReport apply_decisions(const std::vector<Decision>& decisions, KnowledgeBase& kb, ExclusionList& lexicon,
                            const DecisionContext& ctx);

}  // namespace logoscope
