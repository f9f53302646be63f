// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "candidate_extractor.hpp"

#include <algorithm>
#include <charconv>
#include <future>
#include <set>
#include <thread>

#include "edit_distance.hpp"
#include "error.hpp"
#include "file_util.hpp"
#include "utf8.hpp"

namespace logoscope {

namespace {

constexpr std::uint64_t kNoCodePoint = 0x1FFFFF;

std::uint64_t pack(char32_t a, char32_t b, std::uint64_t c = kNoCodePoint) {
  return (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(b) << 21) | c;
}

bool is_joiner(char32_t c) { return c == U'-' || c == U'‐' || c == U'‑' || c == U'\'' || c == U'’'; }

bool has_letter(std::u32string_view cps) {
  return std::any_of(cps.begin(), cps.end(), [](char32_t c) { return utf8::is_letter(c); });
}

}  // namespace

std::vector<std::u32string> ngram_segments(std::string_view form) {
  const std::u32string cps = utf8::decode(utf8::to_lower(utf8::nfc(form)));
  std::vector<std::u32string> out;
  std::u32string current;
  for (char32_t c : cps) {
    if (is_joiner(c)) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

void NgramTable::add_form(std::string_view form) {
  for (const auto& seg : ngram_segments(form)) {
    for (std::size_t i = 0; i + 2 <= seg.size(); ++i) {
      ++counts_[pack(seg[i], seg[i + 1])];
      if (i + 3 <= seg.size()) ++counts_[pack(seg[i], seg[i + 1], seg[i + 2])];
    }
  }
}

NgramTable NgramTable::from_forms(const StringSet& forms) {
  NgramTable table;
  table.counts_.reserve(forms.size());
  for (const auto& f : forms) table.add_form(f);
  return table;
}

std::uint32_t NgramTable::count(std::u32string_view gram) const {
  std::uint64_t key = 0;
  if (gram.size() == 2) {
    key = pack(gram[0], gram[1]);
  } else if (gram.size() == 3) {
    key = pack(gram[0], gram[1], gram[2]);
  } else {
    return 0;
  }
  const auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

bool char_ngram_filter(std::string_view surface, const NgramTable& table) {
  for (const auto& seg : ngram_segments(surface)) {
    for (std::size_t i = 0; i + 2 <= seg.size(); ++i) {
      if (table.count(std::u32string_view(seg).substr(i, 2)) == 0) return true;
      if (i + 3 <= seg.size() && table.count(std::u32string_view(seg).substr(i, 3)) == 0) return true;
    }
  }
  return false;
}

std::optional<std::pair<std::string, std::string>> concat_split(std::string_view surface,
                                                                const ExclusionList& lexicon) {
  const std::u32string cps = utf8::decode(normalize_form(surface));
  const std::size_t n = cps.size();
  std::optional<std::pair<std::string, std::string>> best;
  std::size_t best_gap = n + 1;
  for (std::size_t i = 2; i + 2 <= n; ++i) {
    const std::size_t gap = i > n - i ? i - (n - i) : (n - i) - i;
    if (gap >= best_gap) continue;
    std::string left = utf8::encode(std::u32string_view(cps).substr(0, i));
    std::string right = utf8::encode(std::u32string_view(cps).substr(i));
    if (lexicon.contains(left) && lexicon.contains(right)) {
      best_gap = gap;
      best.emplace(std::move(left), std::move(right));
    }
  }
  return best;
}

std::vector<std::vector<std::string>> SpellProvider::suggest_all(const std::vector<std::string>& surfaces) {
  std::vector<std::vector<std::string>> out;
  out.reserve(surfaces.size());
  for (const auto& s : surfaces) out.push_back(suggest(s));
  return out;
}

LexiconSpellProvider::LexiconSpellProvider(const ExclusionList& lexicon, std::size_t max_distance,
                                           std::size_t max_suggestions)
    : max_distance_(max_distance), max_suggestions_(max_suggestions) {
  for (const auto& form : lexicon.forms()) {
    std::u32string lower = utf8::decode(utf8::to_lower(form));
    if (lower.size() >= buckets_.size()) buckets_.resize(lower.size() + 1);
    buckets_[lower.size()].emplace_back(std::move(lower), form);
  }
  for (auto& bucket : buckets_) std::sort(bucket.begin(), bucket.end());
}

std::vector<std::string> LexiconSpellProvider::suggest_const(std::string_view surface) const {
  const std::u32string query = utf8::decode(utf8::to_lower(normalize_form(surface)));
  std::vector<std::pair<std::size_t, std::string>> hits;
  const std::size_t lo = query.size() > max_distance_ ? query.size() - max_distance_ : 0;
  const std::size_t hi = std::min(query.size() + max_distance_, buckets_.empty() ? 0 : buckets_.size() - 1);
  for (std::size_t len = lo; len <= hi && !buckets_.empty(); ++len) {
    for (const auto& [lower, form] : buckets_[len]) {
      if (lower == query) continue;
      if (auto d = bounded_edit_distance(query, lower, max_distance_)) hits.emplace_back(*d, form);
    }
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < hits.size() && out.size() < max_suggestions_; ++i) out.push_back(hits[i].second);
  return out;
}

std::vector<std::string> LexiconSpellProvider::suggest(std::string_view surface) { return suggest_const(surface); }

std::vector<std::vector<std::string>> LexiconSpellProvider::suggest_all(const std::vector<std::string>& surfaces) {
  std::vector<std::vector<std::string>> out(surfaces.size());
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < surfaces.size(); i += workers) out[i] = suggest_const(surfaces[i]);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

std::vector<std::vector<std::string>> ProcessSpellProvider::suggest_all(const std::vector<std::string>& surfaces) {
  if (surfaces.empty()) return {};
  const auto lines = process_.exchange(surfaces);
  std::vector<std::vector<std::string>> out;
  out.reserve(surfaces.size());
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    const auto fields = split(lines[i], '\t');
    if (fields.empty() || fields[0] != surfaces[i]) {
      throw Error(ErrorCode::kAdapter, "AdapterFailure", "unexpected spell-checker line: '" + lines[i] + "'");
    }
    std::vector<std::string> suggestions;
    for (std::size_t f = 1; f < fields.size(); ++f) {
      if (!trim(fields[f]).empty()) suggestions.emplace_back(trim(fields[f]));
    }
    out.push_back(std::move(suggestions));
  }
  return out;
}

std::vector<std::string> ProcessSpellProvider::suggest(std::string_view surface) {
  return suggest_all({std::string(surface)}).front();
}

SpellResult spell_result(std::string_view surface, const std::vector<std::string>& suggestions) {
  const std::u32string query = utf8::decode(utf8::to_lower(normalize_form(surface)));
  SpellResult r;
  for (const auto& s : suggestions) {
    const std::u32string cand = utf8::decode(utf8::to_lower(normalize_form(s)));
    if (cand == query) continue;
    r.min_distance = std::min(r.min_distance, edit_distance(query, cand));
  }
  r.suspect = r.min_distance == 1;
  return r;
}

SpellResult spell_suspect(std::string_view surface, SpellProvider& provider) {
  try {
    return spell_result(surface, provider.suggest(surface));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAdapter) throw;
    return {};
  }
}

void compute_filters(std::vector<Candidate>& candidates, const CandidateFilters& filters) {
  for (auto& c : candidates) {
    if (filters.ngrams) c.flags.char_ngram_suspect = char_ngram_filter(c.surface, *filters.ngrams);
    if (filters.lexicon) {
      c.concat_parts = concat_split(c.surface, *filters.lexicon);
      c.flags.concat_suspect = c.concat_parts.has_value();
    }
  }
  if (!filters.spell) return;
  std::vector<std::string> surfaces;
  surfaces.reserve(candidates.size());
  for (const auto& c : candidates) surfaces.push_back(c.surface);
  std::vector<std::vector<std::string>> suggestions;
  try {
    suggestions = filters.spell->suggest_all(surfaces);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAdapter) throw;
    suggestions.assign(candidates.size(), {});
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const SpellResult r = spell_result(candidates[i].surface, suggestions[i]);
    candidates[i].min_spell_distance = r.min_distance;
    candidates[i].flags.spell_suspect = r.suspect;
  }
}

std::vector<Candidate> extract_unknown(const CorpusBatch& batch, const ExclusionList& lexicon,
                                       const CandidateFilters& filters) {
  std::map<std::string, Candidate> by_key;
  std::vector<TokenOccurrence> deferred;  // sentence-initial title-case unknowns
  std::unordered_map<std::string, std::size_t> article_order;

  auto add = [&](const std::string& key, TokenOccurrence occ) {
    auto& c = by_key[key];
    c.surface = key;
    c.occurrences.push_back(std::move(occ));
  };

  for (std::size_t a = 0; a < batch.articles.size(); ++a) {
    const Article& article = batch.articles[a];
    article_order.emplace(article.article_id, a);
    std::size_t last_paragraph = static_cast<std::size_t>(-1);
    std::size_t last_sentence = static_cast<std::size_t>(-1);
    for (TokenOccurrence occ : segment(article)) {
      const bool sentence_initial = occ.paragraph_index != last_paragraph || occ.sentence_index != last_sentence;
      last_paragraph = occ.paragraph_index;
      last_sentence = occ.sentence_index;

      const std::size_t elided = elision_prefix_length(occ.surface);
      if (elided > 0) {
        occ.surface.erase(0, elided);
        occ.span.begin += elided;
      }
      const std::u32string cps = utf8::decode(occ.surface);
      if (cps.size() < 2 || !has_letter(cps)) continue;
      if (lexicon.contains(occ.surface)) continue;
      std::string key = normalize_form(occ.surface);
      if (sentence_initial && elided == 0 && utf8::is_title_case(key)) {
        if (lexicon.contains(utf8::decapitalize(key))) continue;
        deferred.push_back(std::move(occ));
        continue;
      }
      add(key, std::move(occ));
    }
  }
  for (auto& occ : deferred) {
    const std::string key = normalize_form(occ.surface);
    add(by_key.contains(key) ? key : utf8::decapitalize(key), std::move(occ));
  }

  std::vector<Candidate> out;
  out.reserve(by_key.size());
  for (auto& [key, c] : by_key) {
    std::sort(c.occurrences.begin(), c.occurrences.end(), [&](const TokenOccurrence& x, const TokenOccurrence& y) {
      const auto ax = article_order.at(x.article_id);
      const auto ay = article_order.at(y.article_id);
      return std::tie(ax, x.paragraph_index, x.span.begin) < std::tie(ay, y.paragraph_index, y.span.begin);
    });
    std::set<std::string_view> docs;
    for (const auto& o : c.occurrences) docs.insert(o.article_id);
    c.abs_freq = c.occurrences.size();
    c.doc_freq = docs.size();
    c.batch_date = batch.batch_date;
    c.lexicon_version = lexicon.version();
    out.push_back(std::move(c));
  }
  compute_filters(out, filters);
  return out;
}

std::size_t count_tokens(const CorpusBatch& batch) {
  std::size_t n = 0;
  for (const auto& article : batch.articles) {
    for (const auto& p : article.paragraphs) n += tokenize(p).size();
  }
  return n;
}

void to_json(nlohmann::json& j, const TokenOccurrence& o) {
  j = {{"surface", o.surface},
       {"article_id", o.article_id},
       {"paragraph_index", o.paragraph_index},
       {"sentence_index", o.sentence_index},
       {"char_span", {o.span.begin, o.span.end}}};
}

void from_json(const nlohmann::json& j, TokenOccurrence& o) {
  o.surface = j.at("surface").get<std::string>();
  o.article_id = j.at("article_id").get<std::string>();
  o.paragraph_index = j.at("paragraph_index").get<std::size_t>();
  o.sentence_index = j.at("sentence_index").get<std::size_t>();
  o.span = {j.at("char_span").at(0).get<std::size_t>(), j.at("char_span").at(1).get<std::size_t>()};
}

void to_json(nlohmann::json& j, const Candidate& c) {
  nlohmann::json flags = nlohmann::json::array();
  if (c.flags.char_ngram_suspect) flags.push_back("char_ngram_suspect");
  if (c.flags.concat_suspect) flags.push_back("concat_suspect");
  if (c.flags.spell_suspect) flags.push_back("spell_suspect");
  j = {{"candidate_id", c.candidate_id},
       {"surface", c.surface},
       {"abs_freq", c.abs_freq},
       {"doc_freq", c.doc_freq},
       {"batch_date", c.batch_date.str()},
       {"filter_flags", flags},
       {"concat_split", c.concat_parts ? nlohmann::json{c.concat_parts->first, c.concat_parts->second}
                                       : nlohmann::json(nullptr)},
       {"min_spell_distance", c.min_spell_distance},
       {"lexicon_version", c.lexicon_version},
       {"occurrences", c.occurrences}};
}

void from_json(const nlohmann::json& j, Candidate& c) {
  c.candidate_id = j.at("candidate_id").get<std::int64_t>();
  c.surface = j.at("surface").get<std::string>();
  c.abs_freq = j.at("abs_freq").get<std::size_t>();
  c.doc_freq = j.at("doc_freq").get<std::size_t>();
  c.batch_date = Date::parse_or_throw(j.at("batch_date").get<std::string>());
  c.flags = {};
  for (const auto& f : j.at("filter_flags")) {
    const auto name = f.get<std::string>();
    if (name == "char_ngram_suspect") c.flags.char_ngram_suspect = true;
    if (name == "concat_suspect") c.flags.concat_suspect = true;
    if (name == "spell_suspect") c.flags.spell_suspect = true;
  }
  c.concat_parts.reset();
  if (const auto& s = j.at("concat_split"); !s.is_null()) {
    c.concat_parts.emplace(s.at(0).get<std::string>(), s.at(1).get<std::string>());
  }
  c.min_spell_distance = j.at("min_spell_distance").get<std::size_t>();
  c.lexicon_version = j.at("lexicon_version").get<std::uint64_t>();
  c.occurrences = j.at("occurrences").get<std::vector<TokenOccurrence>>();
}

void write_candidates(const std::filesystem::path& path, const std::vector<Candidate>& candidates) {
  std::string out;
  for (const auto& c : candidates) out += nlohmann::json(c).dump() + '\n';
  write_file_atomic(path, out);
}

std::vector<Candidate> read_candidates(const std::filesystem::path& path) {
  std::vector<Candidate> out;
  for (const auto& line : split_lines(read_file(path))) {
    if (trim(line).empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line).get<Candidate>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "BadCandidateRecord", path.string() + ": " + e.what());
    }
  }
  return out;
}

WidRegistry WidRegistry::load(const std::filesystem::path& path) {
  WidRegistry r;
  if (!std::filesystem::exists(path)) return r;
  for (const auto& line : split_lines(read_file(path))) {
    if (trim(line).empty() || line.starts_with("wid\t")) continue;
    const auto f = split(line, '\t');
    std::int64_t wid = 0;
    const auto date = f.size() == 3 ? Date::parse(f[2]) : std::nullopt;
    if (!date || std::from_chars(f[0].data(), f[0].data() + f[0].size(), wid).ec != std::errc()) {
      throw Error(ErrorCode::kParse, "BadRegistryRecord", path.string() + ": '" + line + "'");
    }
    r.by_wid_[wid] = {std::string(f[1]), *date};
    r.by_surface_[std::string(f[1])] = wid;
    r.next_ = std::max(r.next_, wid + 1);
  }
  return r;
}

void WidRegistry::save(const std::filesystem::path& path) const {
  std::string out = "wid\tsurface\tfirst_date\n";
  for (const auto& [wid, e] : by_wid_) out += std::to_string(wid) + '\t' + e.surface + '\t' + e.first_date.str() + '\n';
  write_file_atomic(path, out);
}

std::int64_t WidRegistry::assign(const std::string& surface, const Date& date) {
  if (auto it = by_surface_.find(surface); it != by_surface_.end()) return it->second;
  const std::int64_t wid = next_++;
  by_wid_[wid] = {surface, date};
  by_surface_[surface] = wid;
  return wid;
}

std::optional<std::int64_t> WidRegistry::find(std::string_view surface) const {
  if (auto it = by_surface_.find(std::string(surface)); it != by_surface_.end()) return it->second;
  return std::nullopt;
}

const std::string* WidRegistry::surface_of(std::int64_t wid) const {
  auto it = by_wid_.find(wid);
  return it == by_wid_.end() ? nullptr : &it->second.surface;
}

std::optional<Date> WidRegistry::first_date(std::int64_t wid) const {
  auto it = by_wid_.find(wid);
  if (it == by_wid_.end()) return std::nullopt;
  return it->second.first_date;
}

}  // namespace logoscope
