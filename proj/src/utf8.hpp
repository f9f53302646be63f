// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers backed by ICU. All strings in the core are UTF-8; offsets are
// byte offsets unless a function says otherwise.
namespace logoscope::utf8 {

// Decodes to code points; malformed sequences become U+FFFD.
std::u32string decode(std::string_view s);
std::string encode(std::u32string_view s);
std::string encode(char32_t c);

// Number of code points.
std::size_t length(std::string_view s);

// Byte offset of every code point start, plus s.size() at the end.
std::vector<std::size_t> boundaries(std::string_view s);

bool is_letter(char32_t c);
bool is_digit(char32_t c);
bool is_mark(char32_t c);
bool is_upper(char32_t c);
bool is_lower(char32_t c);
bool is_space(char32_t c);

// Simple (one-to-one) lowercase mapping of a single code point.
char32_t fold_lower(char32_t c);

std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);
// Lowercases the first code point only.
std::string decapitalize(std::string_view s);
// Uppercases the first code point only.
std::string capitalize(std::string_view s);

// First code point is an uppercase letter.
bool is_capitalized(std::string_view s);
// At least two letters and no lowercase letter.
bool is_all_caps(std::string_view s);
// Capitalized and every following letter is lowercase.
bool is_title_case(std::string_view s);

bool is_ascii(std::string_view s);

// NFC normalization.
std::string nfc(std::string_view s);

}  // namespace logoscope::utf8
