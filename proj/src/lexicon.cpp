// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "lexicon.hpp"

#include <charconv>

#include "error.hpp"
#include "file_util.hpp"
#include "segmenter.hpp"
#include "utf8.hpp"

namespace logoscope {

std::string normalize_form(std::string_view form) {
  std::string out = utf8::nfc(form);
  static constexpr std::string_view kCurly = "’";
  for (std::size_t pos = out.find(kCurly); pos != std::string::npos; pos = out.find(kCurly, pos + 1)) {
    out.replace(pos, kCurly.size(), "'");
  }
  return out;
}

ExclusionList ExclusionList::load(const std::vector<std::filesystem::path>& paths) {
  ExclusionList list;
  for (const auto& path : paths) {
    if (!std::filesystem::exists(path)) {
      throw Error(ErrorCode::kNotFound, "MissingFile", "lexicon file not found: " + path.string());
    }
    Source source{path.filename().string(), 0};
    for (const std::string& line : split_lines(read_file(path))) {
      const std::string_view form = trim(line);
      if (form.empty() || form.front() == '#') continue;
      list.forms_.insert(normalize_form(form));
      ++source.form_count;
    }
    list.sources_.push_back(std::move(source));
  }
  if (list.forms_.empty()) throw Error(ErrorCode::kInvalidArgument, "EmptyLexicon", "no forms in lexicon files");
  return list;
}

bool ExclusionList::lookup(std::string_view normalized) const {
  if (normalized.empty()) return false;
  if (contains_normalized(normalized)) return true;
  const std::string lower = utf8::to_lower(normalized);
  return lower != normalized && contains_normalized(lower);
}

bool ExclusionList::contains(std::string_view surface) const {
  const std::string form = normalize_form(surface);
  if (lookup(form)) return true;
  const std::size_t elided = elision_prefix_length(form);
  return elided > 0 && lookup(std::string_view(form).substr(elided));
}

std::uint64_t ExclusionList::extend(const std::set<std::string>& forms, std::string_view reason,
                                    const Date& date) {
  ++version_;
  std::string audit;
  for (const std::string& raw : forms) {
    std::string form = normalize_form(raw);
    if (form.empty()) continue;
    audit += format_audit_record({form, std::string(reason), date, version_});
    forms_.insert(std::move(form));
  }
  if (audit_path_) {
    if (!std::filesystem::exists(*audit_path_)) audit.insert(0, "form\treason\tdate\tversion\n");
    append_to_file(*audit_path_, audit);
  }
  return version_;
}

void ExclusionList::replay(const std::vector<AuditRecord>& records) {
  for (const auto& r : records) {
    forms_.insert(normalize_form(r.form));
    version_ = std::max(version_, r.version);
  }
}

std::string format_audit_record(const AuditRecord& r) {
  return r.form + '\t' + r.reason + '\t' + r.date.str() + '\t' + std::to_string(r.version) + '\n';
}

std::vector<AuditRecord> read_audit_log(const std::filesystem::path& path) {
  std::vector<AuditRecord> records;
  if (!std::filesystem::exists(path)) return records;
  std::size_t line_no = 0;
  for (const std::string& line : split_lines(read_file(path))) {
    ++line_no;
    if (trim(line).empty() || line.starts_with("form\t")) continue;
    const auto f = split(line, '\t');
    std::uint64_t version = 0;
    const auto date = f.size() == 4 ? Date::parse(f[2]) : std::nullopt;
    if (!date || std::from_chars(f[3].data(), f[3].data() + f[3].size(), version).ec != std::errc()) {
      throw Error(ErrorCode::kParse, "BadAuditRecord", path.string() + ":" + std::to_string(line_no));
    }
    records.push_back({std::string(f[0]), std::string(f[1]), *date, version});
  }
  return records;
}

}  // namespace logoscope
