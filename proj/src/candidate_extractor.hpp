// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "article.hpp"
#include "date.hpp"
#include "lexicon.hpp"
#include "segmenter.hpp"
#include "subprocess.hpp"

namespace logoscope {

inline constexpr std::size_t kNoSuggestionDistance = 100;

struct FilterFlags {
  bool char_ngram_suspect = false;
  bool concat_suspect = false;
  bool spell_suspect = false;

  friend bool operator==(const FilterFlags&, const FilterFlags&) = default;
};

struct Candidate {
  std::int64_t candidate_id = 0;  // wid; 0 until registered
  std::string surface;
  std::vector<TokenOccurrence> occurrences;
  std::size_t abs_freq = 0;
  std::size_t doc_freq = 0;
  Date batch_date;
  FilterFlags flags;
  std::optional<std::pair<std::string, std::string>> concat_parts;
  std::size_t min_spell_distance = kNoSuggestionDistance;
  std::uint64_t lexicon_version = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Bigram and trigram counts over lowercased lexicon forms. Forms are split at
// hyphens and apostrophes so n-grams never straddle a joiner.
class NgramTable {
 public:
  static NgramTable from_forms(const StringSet& forms);
  void add_form(std::string_view form);
  std::uint32_t count(std::u32string_view gram) const;
  std::size_t size() const { return counts_.size(); }

 private:
  std::unordered_map<std::uint64_t, std::uint32_t> counts_;
};

// Splits a lowercased form into its joiner-free segments.
std::vector<std::u32string> ngram_segments(std::string_view form);

// True iff some bigram or trigram of the form has a zero count in the table.
bool char_ngram_filter(std::string_view surface, const NgramTable& table);

// Most balanced split into two lexicon members of at least two code points;
// on equal balance the leftmost split point wins.
std::optional<std::pair<std::string, std::string>> concat_split(std::string_view surface,
                                                                const ExclusionList& lexicon);

class SpellProvider {
 public:
  virtual ~SpellProvider() = default;
  // Throws Error(kAdapter) on failure.
  virtual std::vector<std::string> suggest(std::string_view surface) = 0;
  virtual std::vector<std::vector<std::string>> suggest_all(const std::vector<std::string>& surfaces);
};

// Lexicon members within edit distance 2 of the lowercased surface, scanned
// per length bucket.
class LexiconSpellProvider final : public SpellProvider {
 public:
  explicit LexiconSpellProvider(const ExclusionList& lexicon, std::size_t max_distance = 2,
                                std::size_t max_suggestions = 10);
  std::vector<std::string> suggest(std::string_view surface) override;
  std::vector<std::vector<std::string>> suggest_all(const std::vector<std::string>& surfaces) override;

 private:
  std::vector<std::string> suggest_const(std::string_view surface) const;

  std::size_t max_distance_;
  std::size_t max_suggestions_;
  std::vector<std::vector<std::pair<std::u32string, std::string>>> buckets_;
};

// External spell-checker: one surface per input line, one
// `surface<TAB>suggestion<TAB>...` line back.
class ProcessSpellProvider final : public SpellProvider {
 public:
  explicit ProcessSpellProvider(std::string command) : process_(std::move(command)) {}
  std::vector<std::string> suggest(std::string_view surface) override;
  std::vector<std::vector<std::string>> suggest_all(const std::vector<std::string>& surfaces) override;

 private:
  LineProcess process_;
};

struct SpellResult {
  bool suspect = false;
  std::size_t min_distance = kNoSuggestionDistance;
};

// Distance is taken on lowercased forms; a suggestion equal to the surface is
// ignored.
SpellResult spell_result(std::string_view surface, const std::vector<std::string>& suggestions);
SpellResult spell_suspect(std::string_view surface, SpellProvider& provider);

struct CandidateFilters {
  const NgramTable* ngrams = nullptr;
  const ExclusionList* lexicon = nullptr;  // for concat splits
  SpellProvider* spell = nullptr;
};

// One candidate per distinct unknown form, sorted by surface. Filters are
// computed when given, never applied.
std::vector<Candidate> extract_unknown(const CorpusBatch& batch, const ExclusionList& lexicon,
                                       const CandidateFilters& filters = {});

void compute_filters(std::vector<Candidate>& candidates, const CandidateFilters& filters);

// Total number of word tokens in the batch, the denominator of rel_freq.
std::size_t count_tokens(const CorpusBatch& batch);

void to_json(nlohmann::json& j, const TokenOccurrence& o);
void from_json(const nlohmann::json& j, TokenOccurrence& o);
void to_json(nlohmann::json& j, const Candidate& c);
void from_json(const nlohmann::json& j, Candidate& c);

void write_candidates(const std::filesystem::path& path, const std::vector<Candidate>& candidates);
std::vector<Candidate> read_candidates(const std::filesystem::path& path);

// Stable integer ids per surface, persisted as `wid<TAB>surface<TAB>first_date`.
class WidRegistry {
 public:
  static WidRegistry load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  // Existing id, or the next sequential one.
  std::int64_t assign(const std::string& surface, const Date& date);
  std::optional<std::int64_t> find(std::string_view surface) const;
  const std::string* surface_of(std::int64_t wid) const;
  std::optional<Date> first_date(std::int64_t wid) const;
  std::size_t size() const { return by_wid_.size(); }

 private:
  struct Entry {
    std::string surface;
    Date first_date;
  };
  std::map<std::int64_t, Entry> by_wid_;
  std::unordered_map<std::string, std::int64_t> by_surface_;
  std::int64_t next_ = 1;
};

}  // namespace logoscope
