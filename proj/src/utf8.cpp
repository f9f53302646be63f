// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "utf8.hpp"

#include <unicode/normalizer2.h>
#include <unicode/locid.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "error.hpp"

namespace logoscope::utf8 {

std::u32string decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const int32_t n = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < n) {
    UChar32 c;
    U8_NEXT(p, i, n, c);
    out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
  }
  return out;
}

std::string encode(char32_t c) {
  char buf[4];
  int32_t i = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), i, 4, static_cast<UChar32>(c), error);
  if (error) return "\xEF\xBF\xBD";
  return std::string(buf, static_cast<std::size_t>(i));
}

std::string encode(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) out += encode(c);
  return out;
}

std::size_t length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::vector<std::size_t> boundaries(std::string_view s) {
  std::vector<std::size_t> out;
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const int32_t n = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < n) {
    out.push_back(static_cast<std::size_t>(i));
    UChar32 c;
    U8_NEXT(p, i, n, c);
    (void)c;
  }
  out.push_back(s.size());
  return out;
}

bool is_letter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)); }
bool is_digit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)); }
bool is_upper(char32_t c) { return u_isUUppercase(static_cast<UChar32>(c)); }
bool is_lower(char32_t c) { return u_isULowercase(static_cast<UChar32>(c)); }
bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool is_mark(char32_t c) {
  const auto type = u_charType(static_cast<UChar32>(c));
  return type == U_NON_SPACING_MARK || type == U_ENCLOSING_MARK ||
         type == U_COMBINING_SPACING_MARK;
}

namespace {

std::string ascii_map(std::string_view s, bool lower) {
  std::string out(s);
  for (char& ch : out) {
    if (lower && ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
    if (!lower && ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
  }
  return out;
}

}  // namespace

bool is_ascii(std::string_view s) {
  for (unsigned char c : s) {
    if (c >= 0x80) return false;
  }
  return true;
}

char32_t fold_lower(char32_t c) { return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))); }

std::string to_lower(std::string_view s) {
  if (is_ascii(s)) return ascii_map(s, true);
  auto us = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  us.toLower(icu::Locale::getRoot());
  std::string out;
  us.toUTF8String(out);
  return out;
}

std::string to_upper(std::string_view s) {
  if (is_ascii(s)) return ascii_map(s, false);
  auto us = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  us.toUpper(icu::Locale::getRoot());
  std::string out;
  us.toUTF8String(out);
  return out;
}

namespace {

std::string map_first(std::string_view s, bool lower) {
  if (s.empty()) return {};
  const auto b = boundaries(s);
  const std::string_view head = s.substr(0, b[1]);
  return (lower ? to_lower(head) : to_upper(head)) + std::string(s.substr(b[1]));
}

}  // namespace

std::string decapitalize(std::string_view s) { return map_first(s, true); }
std::string capitalize(std::string_view s) { return map_first(s, false); }

bool is_capitalized(std::string_view s) {
  const auto cps = decode(s);
  return !cps.empty() && is_upper(cps.front());
}

bool is_all_caps(std::string_view s) {
  std::size_t letters = 0;
  for (char32_t c : decode(s)) {
    if (!is_letter(c)) continue;
    if (is_lower(c)) return false;
    ++letters;
  }
  return letters >= 2;
}

bool is_title_case(std::string_view s) {
  const auto cps = decode(s);
  if (cps.empty() || !is_upper(cps.front())) return false;
  for (std::size_t i = 1; i < cps.size(); ++i) {
    if (is_letter(cps[i]) && is_upper(cps[i])) return false;
  }
  return true;
}

std::string nfc(std::string_view s) {
  if (is_ascii(s)) return std::string(s);
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(ErrorCode::kInternal, "IcuFailure", "NFC instance unavailable");
  auto us = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  if (norm->quickCheck(us, status) == UNORM_YES && U_SUCCESS(status)) return std::string(s);
  status = U_ZERO_ERROR;
  icu::UnicodeString out = norm->normalize(us, status);
  if (U_FAILURE(status)) return std::string(s);
  std::string result;
  out.toUTF8String(result);
  return result;
}

}  // namespace logoscope::utf8
