// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "article.hpp"

namespace logoscope {

// Byte offsets into a paragraph, [begin, end).
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(const CharSpan& other) const { return begin <= other.begin && other.end <= end; }
  friend bool operator==(const CharSpan&, const CharSpan&) = default;
  friend auto operator<=>(const CharSpan&, const CharSpan&) = default;
};

struct Token {
  std::string surface;
  CharSpan span;
  std::size_t sentence_index = 0;
};

struct TokenOccurrence {
  std::string surface;
  std::string article_id;
  std::size_t paragraph_index = 0;
  std::size_t sentence_index = 0;
  CharSpan span;

  friend bool operator==(const TokenOccurrence&, const TokenOccurrence&) = default;
};

// Maximal runs of word characters (letters, digits, combining marks). Hyphens
// and apostrophes are kept only when flanked by word characters on both sides.
std::vector<Token> tokenize(std::string_view paragraph);

// Sentence spans that tile the paragraph.
std::vector<CharSpan> split_sentences(std::string_view paragraph);

std::vector<TokenOccurrence> segment(const Article& article);

enum class Position { kBeginning, kMiddle, kEnd };

// First two paragraphs are the beginning, the last three the end; beginning
// wins on overlap. Throws Error(kInvalidArgument, "IndexOutOfRange").
Position position_of(std::size_t paragraph_index, std::size_t paragraph_count);

std::string_view to_string(Position p);
Position parse_position(std::string_view s);

// True when a matched pair of « », “ ”, " " or ‘ ’ inside the sentence that
// contains `span` encloses it.
bool detect_quoted(std::string_view paragraph, CharSpan span);

// Strips a French elided clitic (l', d', qu', ...) from the front of a token.
// Returns the number of bytes removed.
std::size_t elision_prefix_length(std::string_view token);

}  // namespace logoscope
