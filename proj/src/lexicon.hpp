// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "date.hpp"

namespace logoscope {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

using StringSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

// NFC plus typographic apostrophe folding. Every form entering or querying
// the exclusion list goes through this.
std::string normalize_form(std::string_view form);

struct AuditRecord {
  std::string form;
  std::string reason;
  Date date;
  std::uint64_t version = 0;
};

class ExclusionList {
 public:
  struct Source {
    std::string name;
    std::size_t form_count = 0;
  };

  // Union of the given files (one form per line, '#' comments). Throws
  // MissingFile or EmptyLexicon.
  static ExclusionList load(const std::vector<std::filesystem::path>& paths);

  // Exact, then lowercase; a leading elided article/pronoun (l', qu', ...) is
  // stripped and the remainder looked up the same way.
  bool contains(std::string_view surface) const;
  bool contains_normalized(std::string_view form) const { return forms_.find(form) != forms_.end(); }

  // Adds every form and returns the new version. When an audit log is
  // attached, one record per form is appended to it.
  std::uint64_t extend(const std::set<std::string>& forms, std::string_view reason, const Date& date);

  // Replays records of a previous session; the version becomes the highest
  // replayed one. Nothing is written.
  void replay(const std::vector<AuditRecord>& records);

  void attach_audit_log(std::filesystem::path path) { audit_path_ = std::move(path); }

  std::uint64_t version() const { return version_; }
  std::size_t size() const { return forms_.size(); }
  const StringSet& forms() const { return forms_; }
  const std::vector<Source>& sources() const { return sources_; }

 private:
  bool lookup(std::string_view normalized) const;

  StringSet forms_;
  std::vector<Source> sources_;
  std::uint64_t version_ = 0;
  std::optional<std::filesystem::path> audit_path_;
};

// lexicon-audit.tsv: form, reason, date, version.
std::vector<AuditRecord> read_audit_log(const std::filesystem::path& path);
std::string format_audit_record(const AuditRecord& record);

}  // namespace logoscope
