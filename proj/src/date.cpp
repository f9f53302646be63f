// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "date.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "error.hpp"

namespace logoscope {

using namespace std::chrono;

Date::Date(int y, unsigned m, unsigned d) : ymd_{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}} {
  if (!ymd_.ok()) {
    throw Error(ErrorCode::kInvalidArgument, "BadDate", "invalid calendar date");
  }
}

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  const year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)}, std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

Date Date::parse_or_throw(std::string_view text) {
  auto d = parse(text);
  if (!d) throw Error(ErrorCode::kParse, "BadDate", "expected YYYY-MM-DD, got '" + std::string(text) + "'");
  return *d;
}

Date Date::today() {
  const year_month_day ymd{floor<days>(system_clock::now())};
  return Date(static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
              static_cast<unsigned>(ymd.day()));
}

std::string Date::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

std::string Date::month_key() const { return str().substr(0, 7); }

std::optional<Date> parse_feed_date(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  if (text.size() >= 10) {
    if (auto iso = Date::parse(text.substr(0, 10))) return iso;
  }
  // RFC 822: [Day, ] DD Mon YYYY ...
  if (auto comma = text.find(','); comma != std::string_view::npos && comma < 5) {
    text.remove_prefix(comma + 1);
  }
  std::array<std::string_view, 3> parts;
  std::size_t found = 0;
  std::size_t i = 0;
  while (found < 3 && i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) parts[found++] = text.substr(start, i - start);
  }
  if (found < 3) return std::nullopt;
  static constexpr std::array<std::string_view, 12> kMonths = {
      "jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec"};
  int d = 0, y = 0;
  if (!parse_int(parts[0], d) || !parse_int(parts[2], y)) return std::nullopt;
  std::string mon;
  for (char c : parts[1].substr(0, 3)) mon.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (unsigned m = 0; m < kMonths.size(); ++m) {
    if (kMonths[m] == mon) {
      const year_month_day ymd{std::chrono::year{y}, std::chrono::month{m + 1}, std::chrono::day{static_cast<unsigned>(d)}};
      if (!ymd.ok()) return std::nullopt;
      return Date(y, m + 1, static_cast<unsigned>(d));
    }
  }
  return std::nullopt;
}

}  // namespace logoscope
