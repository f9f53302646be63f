// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "segmenter.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "error.hpp"
#include "utf8.hpp"

namespace logoscope {

namespace {

bool is_word_char(char32_t c) { return utf8::is_letter(c) || utf8::is_digit(c) || utf8::is_mark(c); }

bool is_joiner(char32_t c) {
  return c == U'-' || c == U'‐' || c == U'‑' || c == U'\'' || c == U'’';
}

struct Decoded {
  std::u32string cps;
  std::vector<std::size_t> offsets;  // byte offset of each code point, plus end
};

Decoded decode_with_offsets(std::string_view text) {
  Decoded d;
  d.offsets = utf8::boundaries(text);
  d.cps = utf8::decode(text);
  return d;
}

}  // namespace

std::vector<CharSpan> split_sentences(std::string_view paragraph) {
  static const std::unordered_set<std::string> kAbbreviations = {
      "m", "mm", "mme", "mmes", "mlle", "mlles", "dr", "pr", "me", "st", "ste", "etc", "cf", "p", "av", "bd", "n°", "vol"};
  std::vector<CharSpan> out;
  if (paragraph.empty()) return out;
  const Decoded d = decode_with_offsets(paragraph);
  const auto& cps = d.cps;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    const char32_t c = cps[i];
    if (c != U'.' && c != U'!' && c != U'?' && c != U'…') {
      ++i;
      continue;
    }
    // Word immediately before the terminator.
    std::size_t w = i;
    while (w > 0 && is_word_char(cps[w - 1])) --w;
    const std::u32string word = cps.substr(w, i - w);
    std::size_t j = i;
    while (j < cps.size() && (cps[j] == U'.' || cps[j] == U'!' || cps[j] == U'?' || cps[j] == U'…')) ++j;
    // Closing quotes or brackets stay with the sentence.
    while (j < cps.size() && (cps[j] == U'»' || cps[j] == U'”' || cps[j] == U'"' || cps[j] == U')' ||
                              cps[j] == U'’' || (utf8::is_space(cps[j]) && j + 1 < cps.size() && cps[j + 1] == U'»'))) {
      ++j;
    }
    if (j < cps.size() && !utf8::is_space(cps[j])) {
      i = j;
      continue;
    }
    std::size_t k = j;
    while (k < cps.size() && utf8::is_space(cps[k])) ++k;
    bool boundary = k >= cps.size();
    if (!boundary) {
      const char32_t next = cps[k];
      boundary = utf8::is_upper(next) || utf8::is_digit(next) || next == U'«' || next == U'“' ||
                 next == U'"' || next == U'—' || next == U'–' || next == U'(';
    }
    if (boundary && c == U'.') {
      const std::string lower = utf8::to_lower(utf8::encode(word));
      if (kAbbreviations.contains(lower)) boundary = false;
      if (word.size() == 1 && utf8::is_upper(word[0])) boundary = false;  // initials: "J. Dupont"
    }
    if (boundary) {
      out.push_back({d.offsets[start], d.offsets[k]});
      start = k;
    }
    i = std::max(j, i + 1);
  }
  if (start < cps.size()) out.push_back({d.offsets[start], d.offsets[cps.size()]});
  return out;
}

std::vector<Token> tokenize(std::string_view paragraph) {
  std::vector<Token> tokens;
  const Decoded d = decode_with_offsets(paragraph);
  const auto& cps = d.cps;
  const auto sentences = split_sentences(paragraph);
  std::size_t sentence = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_word_char(cps[i]) || utf8::is_mark(cps[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < cps.size()) {
      if (is_word_char(cps[i])) {
        ++i;
      } else if (is_joiner(cps[i]) && i + 1 < cps.size() && is_word_char(cps[i + 1]) && !utf8::is_mark(cps[i + 1])) {
        i += 2;
      } else {
        break;
      }
    }
    Token t;
    t.span = {d.offsets[start], d.offsets[i]};
    t.surface = std::string(paragraph.substr(t.span.begin, t.span.size()));
    while (sentence + 1 < sentences.size() && sentences[sentence].end <= t.span.begin) ++sentence;
    t.sentence_index = sentence;
    tokens.push_back(std::move(t));
  }
  return tokens;
}

std::vector<TokenOccurrence> segment(const Article& article) {
  std::vector<TokenOccurrence> out;
  for (std::size_t p = 0; p < article.paragraphs.size(); ++p) {
    for (auto& t : tokenize(article.paragraphs[p])) {
      out.push_back({std::move(t.surface), article.article_id, p, t.sentence_index, t.span});
    }
  }
  return out;
}

Position position_of(std::size_t paragraph_index, std::size_t paragraph_count) {
  if (paragraph_index >= paragraph_count) {
    throw Error(ErrorCode::kInvalidArgument, "IndexOutOfRange",
                "paragraph " + std::to_string(paragraph_index) + " of " + std::to_string(paragraph_count));
  }
  if (paragraph_index < 2) return Position::kBeginning;
  if (paragraph_index + 3 >= paragraph_count) return Position::kEnd;
  return Position::kMiddle;
}

std::string_view to_string(Position p) {
  switch (p) {
    case Position::kBeginning: return "beginning";
    case Position::kMiddle: return "middle";
    case Position::kEnd: return "end";
  }
  return "middle";
}

Position parse_position(std::string_view s) {
  if (s == "beginning") return Position::kBeginning;
  if (s == "middle") return Position::kMiddle;
  if (s == "end") return Position::kEnd;
  throw Error(ErrorCode::kParse, "BadPosition", std::string(s));
}

namespace {

enum class QuoteKind { kGuillemet, kDouble, kStraight, kSingle };

struct QuoteMark {
  QuoteKind kind;
  bool opener;  // meaningless for straight quotes
  std::size_t begin;
  std::size_t end;
};

}  // namespace

bool detect_quoted(std::string_view paragraph, CharSpan span) {
  CharSpan sentence{0, paragraph.size()};
  for (const CharSpan& s : split_sentences(paragraph)) {
    if (s.begin <= span.begin && span.begin < s.end) {
      sentence = s;
      break;
    }
  }
  const std::string_view text = paragraph.substr(sentence.begin, sentence.size());
  const Decoded d = decode_with_offsets(text);
  std::vector<QuoteMark> marks;
  for (std::size_t i = 0; i < d.cps.size(); ++i) {
    const char32_t c = d.cps[i];
    const std::size_t b = sentence.begin + d.offsets[i];
    const std::size_t e = sentence.begin + d.offsets[i + 1];
    switch (c) {
      case U'«': marks.push_back({QuoteKind::kGuillemet, true, b, e}); break;
      case U'»': marks.push_back({QuoteKind::kGuillemet, false, b, e}); break;
      case U'“': marks.push_back({QuoteKind::kDouble, true, b, e}); break;
      case U'”': marks.push_back({QuoteKind::kDouble, false, b, e}); break;
      case U'"': marks.push_back({QuoteKind::kStraight, false, b, e}); break;
      case U'‘': marks.push_back({QuoteKind::kSingle, true, b, e}); break;
      case U'’': {
        // A word-internal ’ is an apostrophe, not a closing quote.
        const bool inner = i > 0 && i + 1 < d.cps.size() && is_word_char(d.cps[i - 1]) && is_word_char(d.cps[i + 1]);
        if (!inner) marks.push_back({QuoteKind::kSingle, false, b, e});
        break;
      }
      default: break;
    }
  }
  // Pair marks per kind: a stack for directed quotes, alternation for straight ones.
  std::array<std::vector<std::size_t>, 4> open;
  bool straight_open = false;
  std::size_t straight_at = 0;
  for (const QuoteMark& m : marks) {
    const auto k = static_cast<std::size_t>(m.kind);
    if (m.kind == QuoteKind::kStraight) {
      if (!straight_open) {
        straight_open = true;
        straight_at = m.end;
      } else {
        straight_open = false;
        if (straight_at <= span.begin && span.end <= m.begin) return true;
      }
      continue;
    }
    if (m.opener) {
      open[k].push_back(m.end);
    } else if (!open[k].empty()) {
      const std::size_t opened_at = open[k].back();
      open[k].pop_back();
      if (opened_at <= span.begin && span.end <= m.begin) return true;
    }
  }
  return false;
}

std::size_t elision_prefix_length(std::string_view token) {
  static constexpr std::array<std::string_view, 14> kClitics = {
      "jusqu", "lorsqu", "puisqu", "quoiqu", "qu", "l", "d", "j", "m", "n", "s", "t", "c", "presqu"};
  for (std::string_view clitic : kClitics) {
    if (token.size() <= clitic.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < clitic.size(); ++i) {
      const char c = token[i];
      const char lower = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
      if (lower != clitic[i]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    const std::string_view rest = token.substr(clitic.size());
    if (rest.substr(0, 1) == "'" && rest.size() > 1) return clitic.size() + 1;
    if (rest.substr(0, 3) == "’" && rest.size() > 3) return clitic.size() + 3;
  }
  return 0;
}

}  // namespace logoscope
