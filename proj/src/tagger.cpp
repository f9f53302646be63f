// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "tagger.hpp"

#include <algorithm>

#include "error.hpp"
#include "file_util.hpp"
#include "utf8.hpp"

namespace logoscope {

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::kNc: return "nc";
    case PosTag::kNp: return "np";
    case PosTag::kAdj: return "adj";
    case PosTag::kV: return "v";
    case PosTag::kAdv: return "adv";
    case PosTag::kPrp: return "prp";
    case PosTag::kDet: return "det";
    case PosTag::kPro: return "pro";
    case PosTag::kOther: return "other";
  }
  return "other";
}

std::optional<PosTag> parse_pos_tag(std::string_view text) {
  static constexpr std::pair<std::string_view, PosTag> kTags[] = {
      {"nc", PosTag::kNc},   {"np", PosTag::kNp},   {"adj", PosTag::kAdj},
      {"v", PosTag::kV},     {"adv", PosTag::kAdv}, {"prp", PosTag::kPrp},
      {"det", PosTag::kDet}, {"pro", PosTag::kPro}, {"other", PosTag::kOther}};
  for (const auto& [name, tag] : kTags) {
    if (name == text) return tag;
  }
  return std::nullopt;
}

SuffixTable SuffixTable::parse(std::string_view text) {
  SuffixTable table;
  std::size_t line_no = 0;
  for (const std::string& line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorCode::kParse, "BadSuffixRule", "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    const auto tag = parse_pos_tag(trim(fields[2]));
    if (!tag) throw Error(ErrorCode::kParse, "BadSuffixRule", "line " + std::to_string(line_no) + ": unknown tag");
    Rule rule{utf8::nfc(fields[0]), utf8::nfc(fields[1]), *tag};
    if (!rule.suffix.empty() && rule.suffix.front() == '^') {
      const std::string word = rule.suffix.substr(1);
      table.whole_words_.insert_or_assign(word, std::move(rule));
    } else if (!rule.suffix.empty()) {
      table.suffixes_.push_back(std::move(rule));
    }
  }
  std::stable_sort(table.suffixes_.begin(), table.suffixes_.end(),
                   [](const Rule& a, const Rule& b) { return a.suffix.size() > b.suffix.size(); });
  return table;
}

SuffixTable SuffixTable::load(const std::filesystem::path& path) { return parse(read_file(path)); }

std::optional<std::pair<std::string, PosTag>> SuffixTable::apply(std::string_view lower_word) const {
  if (auto it = whole_words_.find(std::string(lower_word)); it != whole_words_.end()) {
    return std::make_pair(it->second.replacement, it->second.tag);
  }
  for (const Rule& rule : suffixes_) {
    if (lower_word.size() <= rule.suffix.size() || !lower_word.ends_with(rule.suffix)) continue;
    const std::string_view stem = lower_word.substr(0, lower_word.size() - rule.suffix.size());
    if (utf8::length(stem) < 2) continue;
    return std::make_pair(std::string(stem) + rule.replacement, rule.tag);
  }
  return std::nullopt;
}

TaggedToken FallbackTagger::tag_one(const Token& token, bool sentence_initial) const {
  TaggedToken out{token.surface, {}, PosTag::kNc, token.span};
  const auto cps = utf8::decode(token.surface);
  if (std::none_of(cps.begin(), cps.end(), [](char32_t c) { return utf8::is_letter(c); })) {
    out.lemma = token.surface;
    out.pos = PosTag::kOther;
    return out;
  }
  const std::string_view word = std::string_view(token.surface).substr(elision_prefix_length(token.surface));
  const std::string lower = utf8::to_lower(utf8::nfc(word));
  if (auto hit = table_.apply(lower); hit && (!utf8::is_capitalized(word) || sentence_initial)) {
    out.lemma = hit->first;
    out.pos = hit->second;
    return out;
  }
  if (utf8::is_capitalized(word) && (!sentence_initial || utf8::is_all_caps(word))) {
    out.lemma = lower;
    out.pos = PosTag::kNp;
    return out;
  }
  if (auto hit = table_.apply(lower)) {
    out.lemma = hit->first;
    out.pos = hit->second;
    return out;
  }
  out.lemma = lower;
  return out;
}

std::vector<TaggedToken> FallbackTagger::tag_all(const std::vector<Token>& tokens) const {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const bool initial = i == 0 || tokens[i - 1].sentence_index != tokens[i].sentence_index;
    out.push_back(tag_one(tokens[i], initial));
  }
  return out;
}

PosTag map_external_tag(std::string_view tag) {
  if (auto own = parse_pos_tag(tag)) return *own;
  const std::string_view head = tag.substr(0, tag.find(':'));
  if (head == "NOM" || head == "NC" || head == "N") return PosTag::kNc;
  if (head == "NAM" || head == "NP" || head == "NPR") return PosTag::kNp;
  if (head == "ADJ") return PosTag::kAdj;
  if (head == "VER" || head == "V") return PosTag::kV;
  if (head == "ADV") return PosTag::kAdv;
  if (head == "PRP" || head == "P") return PosTag::kPrp;
  if (head == "DET" || head == "DT") return PosTag::kDet;
  if (head == "PRO" || head == "PRON") return PosTag::kPro;
  return PosTag::kOther;
}

std::vector<TaggedToken> ProcessTagger::tag(const std::vector<Token>& tokens) {
  std::vector<std::string> request;
  request.reserve(tokens.size());
  for (const auto& t : tokens) request.push_back(t.surface);
  const auto lines = process_.exchange(request);
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto fields = split(lines[i], '\t');
    if (fields.size() < 3 || fields[0] != tokens[i].surface) {
      throw Error(ErrorCode::kAdapter, "AdapterFailure", "unexpected tagger line: '" + lines[i] + "'");
    }
    std::string lemma = std::string(fields[1]);
    if (lemma.empty() || lemma == "<unknown>") lemma = utf8::to_lower(tokens[i].surface);
    out.push_back({tokens[i].surface, utf8::nfc(lemma), map_external_tag(fields[2]), tokens[i].span});
  }
  return out;
}

TagResult tag_text(std::string_view text, TaggerAdapter* adapter, const FallbackTagger& fallback) {
  const auto tokens = tokenize(text);
  TagResult result;
  if (adapter && adapter != &fallback) {
    try {
      result.tokens = adapter->tag(tokens);
      return result;
    } catch (const Error& e) {
      result.fallback_used = true;
      result.adapter_error = e.what();
    }
  }
  result.tokens = fallback.tag_all(tokens);
  return result;
}

}  // namespace logoscope
