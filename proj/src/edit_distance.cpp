// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "edit_distance.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "utf8.hpp"

namespace logoscope {

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  return edit_distance(utf8::decode(a), utf8::decode(b));
}

std::optional<std::size_t> bounded_edit_distance(std::u32string_view a, std::u32string_view b,
                                                 std::size_t max_distance) {
  if (a.size() < b.size()) std::swap(a, b);
  if (a.size() - b.size() > max_distance) return std::nullopt;
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 2;
  const std::size_t k = max_distance;
  thread_local std::vector<std::size_t> prev, cur;
  prev.assign(b.size() + 1, kInf);
  cur.assign(b.size() + 1, kInf);
  for (std::size_t j = 0; j <= std::min(b.size(), k); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    const std::size_t lo = i > k ? i - k : 0;
    const std::size_t hi = std::min(b.size(), i + k);
    std::fill(cur.begin(), cur.end(), kInf);
    if (lo == 0) cur[0] = i;
    std::size_t row_min = cur[0];
    for (std::size_t j = std::max<std::size_t>(lo, 1); j <= hi; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      row_min = std::min(row_min, cur[j]);
    }
    if (row_min > k) return std::nullopt;
    std::swap(prev, cur);
  }
  if (prev[b.size()] > k) return std::nullopt;
  return prev[b.size()];
}

}  // namespace logoscope
