// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "segmenter.hpp"
#include "subprocess.hpp"

namespace logoscope {

enum class PosTag { kNc, kNp, kAdj, kV, kAdv, kPrp, kDet, kPro, kOther };

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view text);

struct TaggedToken {
  std::string surface;
  std::string lemma;
  PosTag pos = PosTag::kNc;
  CharSpan span;

  // "lemma-pos", the unit format used by theme terms.
  std::string unit() const { return lemma + "-" + std::string(to_string(pos)); }
};

// Lemmatization/tagging rules, one `suffix<TAB>replacement<TAB>tag` per line.
// A suffix starting with '^' matches the whole (lowercased) word instead.
class SuffixTable {
 public:
  struct Rule {
    std::string suffix;
    std::string replacement;
    PosTag tag = PosTag::kNc;
  };

  static SuffixTable parse(std::string_view text);
  static SuffixTable load(const std::filesystem::path& path);

  // Whole-word rule first, then the longest suffix leaving a stem of at least
  // two code points.
  std::optional<std::pair<std::string, PosTag>> apply(std::string_view lower_word) const;

  std::size_t size() const { return whole_words_.size() + suffixes_.size(); }

 private:
  std::unordered_map<std::string, Rule> whole_words_;
  std::vector<Rule> suffixes_;  // longest first
};

class TaggerAdapter {
 public:
  virtual ~TaggerAdapter() = default;
  // One TaggedToken per input token, same order. Throws Error(kAdapter).
  virtual std::vector<TaggedToken> tag(const std::vector<Token>& tokens) = 0;
};

// lowercase + suffix stripping; unknown words default to nc.
class FallbackTagger final : public TaggerAdapter {
 public:
  explicit FallbackTagger(SuffixTable table) : table_(std::move(table)) {}
  std::vector<TaggedToken> tag(const std::vector<Token>& tokens) override { return tag_all(tokens); }
  std::vector<TaggedToken> tag_all(const std::vector<Token>& tokens) const;
  TaggedToken tag_one(const Token& token, bool sentence_initial) const;

 private:
  SuffixTable table_;
};

// External tagger speaking `surface<TAB>lemma<TAB>tag` lines.
class ProcessTagger final : public TaggerAdapter {
 public:
  explicit ProcessTagger(std::string command) : process_(std::move(command)) {}
  std::vector<TaggedToken> tag(const std::vector<Token>& tokens) override;

 private:
  LineProcess process_;
};

// Maps common external tagset labels (TreeTagger style: NOM, NAM, VER:pres,
// PRP:det, ...) onto the coarse tag set.
PosTag map_external_tag(std::string_view tag);

// Tags one paragraph of text.
using TagFn = std::function<std::vector<TaggedToken>(std::string_view)>;

struct TagResult {
  std::vector<TaggedToken> tokens;
  bool fallback_used = false;
  std::string adapter_error;
};

// Tags every token of `text`. A failing adapter falls back to `fallback`, and
// the result says so.
TagResult tag_text(std::string_view text, TaggerAdapter* adapter, const FallbackTagger& fallback);

}  // namespace logoscope
