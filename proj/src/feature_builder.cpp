// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "feature_builder.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "error.hpp"
#include "file_util.hpp"
#include "utf8.hpp"

namespace logoscope {

namespace {

std::u32string lower_cps(std::string_view s) {
  std::u32string cps = utf8::decode(normalize_form(s));
  for (char32_t& c : cps) c = utf8::fold_lower(c);
  return cps;
}

std::string strip_dashes(std::string_view entry) {
  while (!entry.empty() && entry.front() == '-') entry.remove_prefix(1);
  while (!entry.empty() && entry.back() == '-') entry.remove_suffix(1);
  return normalize_form(entry);
}

bool is_hyphen(char32_t c) { return c == U'-' || c == U'‐' || c == U'‑'; }
bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

std::string format_value(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : "nan";
}

}  // namespace

AffixInventory::AffixInventory(std::vector<std::string> prefixes, std::vector<std::string> suffixes)
    : prefixes_(std::move(prefixes)), suffixes_(std::move(suffixes)) {
  auto prepare = [](const std::vector<std::string>& entries, std::vector<std::u32string>& out, const char* what) {
    std::set<std::u32string> seen;
    for (const auto& e : entries) {
      std::u32string cps = lower_cps(strip_dashes(e));
      if (cps.empty() || !seen.insert(cps).second) {
        throw Error(ErrorCode::kParse, "BadAffixFile", std::string("empty or duplicate ") + what + " '" + e + "'");
      }
      out.push_back(std::move(cps));
    }
  };
  prepare(prefixes_, prefix_cps_, "prefix");
  prepare(suffixes_, suffix_cps_, "suffix");
}

AffixInventory AffixInventory::parse(std::string_view text) {
  std::vector<std::string> prefixes, suffixes;
  std::vector<std::string>* target = nullptr;
  for (const auto& raw : split_lines(text)) {
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line == "[prefixes]") {
        target = &prefixes;
      } else if (line == "[suffixes]") {
        target = &suffixes;
      } else {
        target = nullptr;
      }
      continue;
    }
    if (!target) continue;
    for (std::size_t pos = line.find('"'); pos != std::string_view::npos; pos = line.find('"', pos)) {
      const std::size_t close = line.find('"', pos + 1);
      if (close == std::string_view::npos) throw Error(ErrorCode::kParse, "BadAffixFile", "unterminated string");
      target->emplace_back(line.substr(pos + 1, close - pos - 1));
      pos = close + 1;
    }
  }
  if (prefixes.empty() || suffixes.empty()) {
    throw Error(ErrorCode::kParse, "BadAffixFile", "both [prefixes] and [suffixes] need entries");
  }
  return AffixInventory(std::move(prefixes), std::move(suffixes));
}

AffixInventory AffixInventory::load(const std::filesystem::path& path) { return parse(read_file(path)); }

std::vector<bool> AffixInventory::prefix_flags(std::string_view form) const {
  const std::u32string cps = lower_cps(form);
  std::vector<bool> flags(prefix_cps_.size(), false);
  for (std::size_t i = 0; i < prefix_cps_.size(); ++i) {
    const auto& p = prefix_cps_[i];
    if (!cps.starts_with(p)) continue;
    std::size_t rest = p.size();
    if (rest < cps.size() && is_hyphen(cps[rest])) ++rest;
    flags[i] = cps.size() - rest >= 3;
  }
  return flags;
}

std::vector<bool> AffixInventory::suffix_flags(std::string_view form) const {
  const std::u32string cps = lower_cps(form);
  std::vector<std::u32string> variants{cps};
  if (!cps.empty() && (cps.back() == U's' || cps.back() == U'x')) variants.push_back(cps.substr(0, cps.size() - 1));
  std::vector<bool> flags(suffix_cps_.size(), false);
  for (std::size_t i = 0; i < suffix_cps_.size(); ++i) {
    const auto& s = suffix_cps_[i];
    for (const auto& v : variants) {
      if (v.ends_with(s) && v.size() - s.size() >= 3) flags[i] = true;
    }
  }
  return flags;
}

LanguageRules LanguageRules::parse(std::string_view text) {
  LanguageRules rules;
  std::size_t line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    if (trim(raw).empty() || trim(raw).front() == '#') continue;
    const auto f = split(raw, '\t');
    const auto it = f.size() == 2 ? std::find(kLanguageFlags.begin(), kLanguageFlags.end() - 1, f[0])
                                  : kLanguageFlags.end();
    if (it == kLanguageFlags.end() - 1 || it == kLanguageFlags.end()) {
      throw Error(ErrorCode::kParse, "BadLanguageRule", "line " + std::to_string(line_no) + ": expected fr|en|de|es<TAB>pattern");
    }
    try {
      rules.rules_.emplace_back(static_cast<std::size_t>(it - kLanguageFlags.begin()),
                                std::regex(std::string(f[1]), std::regex::ECMAScript | std::regex::optimize));
    } catch (const std::regex_error& e) {
      throw Error(ErrorCode::kParse, "BadLanguageRule", "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rules;
}

LanguageRules LanguageRules::load(const std::filesystem::path& path) { return parse(read_file(path)); }

std::array<bool, 5> LanguageRules::flags(std::string_view form) const {
  std::array<bool, 5> out{};
  const std::string lower = utf8::to_lower(normalize_form(form));
  for (const auto& [lang, re] : rules_) {
    if (!out[lang] && std::regex_search(lower, re)) out[lang] = true;
  }
  out[4] = !(out[0] || out[1] || out[2] || out[3]);
  return out;
}

ContainmentIndex ContainmentIndex::build(const StringSet& forms, std::size_t min_length) {
  ContainmentIndex index;
  std::set<std::u32string> patterns;
  for (const auto& f : forms) {
    std::u32string cps = lower_cps(f);
    if (cps.size() >= min_length) patterns.insert(std::move(cps));
  }
  for (const auto& p : patterns) {
    index.automaton_.add(std::span<const char32_t>(p.data(), p.size()));
    index.forms_.push_back(utf8::encode(p));
  }
  index.automaton_.build();
  return index;
}

ContainmentStats ContainmentIndex::find(std::string_view surface) const {
  ContainmentStats stats;
  const std::u32string cps = lower_cps(surface);
  if (cps.empty()) return stats;
  std::vector<bool> covered(cps.size(), false);
  automaton_.scan(std::span<const char32_t>(cps.data(), cps.size()), [&](const auto& m) {
    stats.matches.push_back({forms_[m.pattern], {m.begin, m.end}});
    stats.max_len = std::max(stats.max_len, m.end - m.begin);
    for (std::size_t i = m.begin; i < m.end; ++i) covered[i] = true;
  });
  std::sort(stats.matches.begin(), stats.matches.end(), [](const ContainmentMatch& a, const ContainmentMatch& b) {
    return std::tie(a.span, a.contained_form) < std::tie(b.span, b.contained_form);
  });
  stats.count = stats.matches.size();
  stats.coverage = static_cast<double>(std::count(covered.begin(), covered.end(), true)) /
                   static_cast<double>(cps.size());
  return stats;
}

ContainmentStats contained_known_forms(std::string_view surface, const ContainmentIndex& index) {
  return index.find(surface);
}

FeatureMask FeatureMask::parse(std::string_view text) {
  FeatureMask mask{false, false, false};
  for (std::string_view part : split(text, ',')) {
    part = trim(part);
    if (part == "formal") {
      mask.formal = true;
    } else if (part == "lex" || part == "morpholex" || part == "morpho-lex") {
      mask.lex = true;
    } else if (part == "theme" || part == "thematic") {
      mask.theme = true;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "BadMask", "unknown feature group '" + std::string(part) + "'");
    }
  }
  if (!mask.formal && !mask.lex && !mask.theme) {
    throw Error(ErrorCode::kInvalidArgument, "BadMask", "empty feature mask");
  }
  return mask;
}

std::string FeatureMask::str() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(formal, "formal");
  add(lex, "lex");
  add(theme, "theme");
  return out;
}

std::vector<std::string> formal_column_names() {
  return {"formal.length",   "formal.has_digit",     "formal.has_hyphen", "formal.has_apostrophe",
          "formal.has_other_symbol", "formal.is_capitalized", "formal.is_all_caps", "formal.abs_freq",
          "formal.doc_freq", "formal.rel_freq"};
}

std::array<double, kFormalDimension> formal_features(const Candidate& c, std::size_t batch_tokens) {
  const std::u32string cps = utf8::decode(c.surface);
  auto any = [&](auto pred) { return std::any_of(cps.begin(), cps.end(), pred) ? 1.0 : 0.0; };
  return {static_cast<double>(cps.size()),
          any([](char32_t x) { return utf8::is_digit(x); }),
          any(is_hyphen),
          any(is_apostrophe),
          any([](char32_t x) {
            return !(utf8::is_letter(x) || utf8::is_digit(x) || utf8::is_mark(x) || is_hyphen(x) || is_apostrophe(x));
          }),
          utf8::is_capitalized(c.surface) ? 1.0 : 0.0,
          utf8::is_all_caps(c.surface) ? 1.0 : 0.0,
          static_cast<double>(c.abs_freq),
          static_cast<double>(c.doc_freq),
          batch_tokens == 0 ? 0.0 : static_cast<double>(c.abs_freq) / static_cast<double>(batch_tokens)};
}

std::array<double, kFormalDimension> formal_features(const Candidate& c, const CorpusBatch& batch) {
  return formal_features(c, count_tokens(batch));
}

std::vector<std::string> bag_of_lemmas(const std::vector<TaggedToken>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    const auto cps = utf8::decode(t.lemma);
    if (cps.size() < 2 || std::none_of(cps.begin(), cps.end(), [](char32_t c) { return utf8::is_letter(c); })) {
      continue;
    }
    out.push_back(utf8::to_lower(t.lemma));
  }
  return out;
}

FeatureBuilder::FeatureBuilder(FeatureResources resources, FeatureMask mask)
    : res_(std::move(resources)), mask_(mask) {
  if (mask_.formal) columns_ = formal_column_names();
  if (mask_.lex) {
    if (!res_.affixes || !res_.languages || !res_.containment) {
      throw Error(ErrorCode::kInvalidArgument, "MissingResource", "morpho-lexical features need affixes, language rules and a containment index");
    }
    for (auto lang : kLanguageFlags) columns_.push_back("lex.lang." + std::string(lang));
    for (const auto& p : res_.affixes->prefixes()) columns_.push_back("lex.prefix." + strip_dashes(p));
    for (const auto& s : res_.affixes->suffixes()) columns_.push_back("lex.suffix." + strip_dashes(s));
    for (const char* name : {"lex.min_spell_distance", "lex.contained.count", "lex.contained.max_len", "lex.contained.coverage"}) {
      columns_.emplace_back(name);
    }
  }
  if (mask_.theme) {
    if (!res_.topics) throw Error(ErrorCode::kNotFound, "ModelMissing", "thematic features need a trained topic model");
    if (!res_.tagger) throw Error(ErrorCode::kInvalidArgument, "MissingResource", "thematic features need a tagger");
    for (std::size_t t = 0; t < res_.topics->k(); ++t) columns_.push_back("theme.article_max." + std::to_string(t));
    for (std::size_t t = 0; t < res_.topics->k(); ++t) columns_.push_back("theme.context." + std::to_string(t));
    for (const auto& j : res_.journals) columns_.push_back("theme.journal." + j);
  }
}

std::vector<double> FeatureBuilder::lex_block(const Candidate& c) const {
  std::vector<double> out;
  for (bool f : res_.languages->flags(c.surface)) out.push_back(f ? 1.0 : 0.0);
  for (bool f : res_.affixes->prefix_flags(c.surface)) out.push_back(f ? 1.0 : 0.0);
  for (bool f : res_.affixes->suffix_flags(c.surface)) out.push_back(f ? 1.0 : 0.0);
  out.push_back(static_cast<double>(c.min_spell_distance));
  const ContainmentStats stats = res_.containment->find(c.surface);
  out.push_back(static_cast<double>(stats.count));
  out.push_back(static_cast<double>(stats.max_len));
  out.push_back(stats.coverage);
  return out;
}

InferResult FeatureBuilder::infer_text(const std::vector<std::string_view>& paragraphs) const {
  std::vector<std::string> doc;
  std::string key;
  for (auto p : paragraphs) {
    for (auto& lemma : bag_of_lemmas(res_.tagger(p))) doc.push_back(std::move(lemma));
    key.append(p);
    key.push_back('\n');
  }
  return res_.topics->infer(doc, res_.infer_iterations, res_.topics->seed() ^ fnv1a64(key));
}

const InferResult& FeatureBuilder::article_topics(const Article& article) const {
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = article_cache_.find(article.article_id); it != article_cache_.end()) return it->second;
  }
  std::vector<std::string_view> paragraphs(article.paragraphs.begin(), article.paragraphs.end());
  InferResult r = infer_text(paragraphs);
  std::lock_guard lock(cache_mutex_);
  return article_cache_.try_emplace(article.article_id, std::move(r)).first->second;
}

std::vector<double> FeatureBuilder::thematic_block(const Candidate& c, const CorpusBatch& batch) const {
  const std::size_t k = res_.topics->k();
  std::unordered_map<std::string_view, const Article*> articles;
  for (const auto& a : batch.articles) articles.emplace(a.article_id, &a);

  std::vector<double> article_max(k, 0.0);
  std::set<std::string_view> seen_articles;
  std::set<std::string_view> journals;
  std::vector<std::string> context_storage;
  std::set<std::tuple<std::string_view, std::size_t, std::size_t>> seen_context;
  for (const auto& occ : c.occurrences) {
    const auto it = articles.find(occ.article_id);
    if (it == articles.end()) continue;
    const Article& a = *it->second;
    journals.insert(a.journal);
    if (seen_articles.insert(a.article_id).second) {
      const auto& p = article_topics(a).proportions;
      for (std::size_t t = 0; t < k; ++t) article_max[t] = std::max(article_max[t], p[t]);
    }
    const std::string& paragraph = a.paragraphs.at(occ.paragraph_index);
    if (res_.sentence_context) {
      if (!seen_context.emplace(a.article_id, occ.paragraph_index, occ.sentence_index).second) continue;
      const auto sentences = split_sentences(paragraph);
      const CharSpan s = occ.sentence_index < sentences.size() ? sentences[occ.sentence_index]
                                                               : CharSpan{0, paragraph.size()};
      context_storage.push_back(paragraph.substr(s.begin, s.size()));
    } else {
      if (!seen_context.emplace(a.article_id, occ.paragraph_index, 0).second) continue;
      context_storage.push_back(paragraph);
    }
  }
  std::vector<std::string_view> context(context_storage.begin(), context_storage.end());
  const auto ctx = infer_text(context);

  std::vector<double> out = article_max;
  out.insert(out.end(), ctx.proportions.begin(), ctx.proportions.end());
  for (const auto& j : res_.journals) out.push_back(journals.contains(j) ? 1.0 : 0.0);
  return out;
}

std::vector<double> FeatureBuilder::build(const Candidate& c, const CorpusBatch& batch, std::size_t batch_tokens) const {
  std::vector<double> out;
  out.reserve(columns_.size());
  if (mask_.formal) {
    const auto f = formal_features(c, batch_tokens);
    out.insert(out.end(), f.begin(), f.end());
  }
  if (mask_.lex) {
    const auto l = lex_block(c);
    out.insert(out.end(), l.begin(), l.end());
  }
  if (mask_.theme) {
    const auto t = thematic_block(c, batch);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

std::vector<double> FeatureBuilder::build(const Candidate& c, const CorpusBatch& batch) const {
  return build(c, batch, count_tokens(batch));
}

std::vector<FeatureRow> FeatureBuilder::build_all(const std::vector<Candidate>& candidates,
                                                  const CorpusBatch& batch) const {
  const std::size_t tokens = count_tokens(batch);
  std::vector<FeatureRow> rows;
  rows.reserve(candidates.size());
  for (const auto& c : candidates) rows.push_back({c.candidate_id, c.surface, c.flags, build(c, batch, tokens)});
  return rows;
}

void write_feature_table(const std::filesystem::path& path, const std::vector<std::string>& columns,
                         const std::vector<FeatureRow>& rows) {
  std::string out = "wid\tsurface\tflag.char_ngram_suspect\tflag.concat_suspect\tflag.spell_suspect";
  for (const auto& c : columns) out += '\t' + c;
  out += '\n';
  for (const auto& r : rows) {
    if (r.values.size() != columns.size()) {
      throw Error(ErrorCode::kInvariant, "DimensionMismatch", "feature row width differs from header");
    }
    out += std::to_string(r.wid) + '\t' + r.surface + '\t' + (r.flags.char_ngram_suspect ? "1" : "0") + '\t' +
           (r.flags.concat_suspect ? "1" : "0") + '\t' + (r.flags.spell_suspect ? "1" : "0");
    for (double v : r.values) out += '\t' + format_value(v);
    out += '\n';
  }
  write_file_atomic(path, out);
}

FeatureTable read_feature_table(const std::filesystem::path& path) {
  constexpr std::size_t kMeta = 5;
  FeatureTable table;
  const auto lines = split_lines(read_file(path));
  if (lines.empty()) throw Error(ErrorCode::kParse, "BadFeatureTable", path.string() + ": empty");
  const auto header = split(lines[0], '\t');
  if (header.size() < kMeta || header[0] != "wid") {
    throw Error(ErrorCode::kParse, "BadFeatureTable", path.string() + ": unexpected header");
  }
  for (std::size_t i = kMeta; i < header.size(); ++i) table.columns.emplace_back(header[i]);
  for (std::size_t l = 1; l < lines.size(); ++l) {
    if (trim(lines[l]).empty()) continue;
    const auto f = split(lines[l], '\t');
    if (f.size() != header.size()) {
      throw Error(ErrorCode::kParse, "BadFeatureTable", path.string() + ":" + std::to_string(l + 1) + ": wrong width");
    }
    FeatureRow row;
    std::from_chars(f[0].data(), f[0].data() + f[0].size(), row.wid);
    row.surface = std::string(f[1]);
    row.flags = {f[2] == "1", f[3] == "1", f[4] == "1"};
    for (std::size_t i = kMeta; i < f.size(); ++i) {
      double v = 0;
      if (std::from_chars(f[i].data(), f[i].data() + f[i].size(), v).ec != std::errc()) {
        throw Error(ErrorCode::kParse, "BadFeatureTable", path.string() + ":" + std::to_string(l + 1) + ": bad number");
      }
      row.values.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace logoscope
