// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace logoscope {

// Calendar date, serialized as YYYY-MM-DD.
class Date {
 public:
  Date() = default;
  Date(int year, unsigned month, unsigned day);

  static std::optional<Date> parse(std::string_view text);
  // Throws Error(kParse, "BadDate") on malformed input.
  static Date parse_or_throw(std::string_view text);
  static Date today();

  int year() const { return static_cast<int>(ymd_.year()); }
  unsigned month() const { return static_cast<unsigned>(ymd_.month()); }
  unsigned day() const { return static_cast<unsigned>(ymd_.day()); }

  std::string str() const;
  // YYYY-MM bucket.
  std::string month_key() const;

  friend bool operator==(const Date&, const Date&) = default;
  friend std::strong_ordering operator<=>(const Date& a, const Date& b) {
    return std::chrono::sys_days(a.ymd_) <=> std::chrono::sys_days(b.ymd_);
  }

 private:
  std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::month{1},
                                   std::chrono::day{1}};
};

// Parses RFC 822 ("Fri, 12 Jul 2013 10:00:00 +0200") or ISO 8601 date-times
// as found in RSS/Atom feeds. Only the calendar date is kept.
std::optional<Date> parse_feed_date(std::string_view text);

}  // namespace logoscope
