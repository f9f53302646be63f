// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace logoscope {

// Unit-cost Levenshtein distance over code points.
std::size_t edit_distance(std::u32string_view a, std::u32string_view b);
std::size_t edit_distance(std::string_view a, std::string_view b);

// Returns the distance if it is <= max_distance, nullopt otherwise. Runs in
// O(max_distance * min(|a|, |b|)).
std::optional<std::size_t> bounded_edit_distance(std::u32string_view a, std::u32string_view b,
                                                 std::size_t max_distance);

}  // namespace logoscope
