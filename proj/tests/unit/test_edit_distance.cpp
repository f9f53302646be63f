// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "edit_distance.hpp"
#include "oracles.hpp"
#include "utf8.hpp"

namespace logoscope {
namespace {

using testing::dp_edit_distance;
using testing::random_word;

TEST(EditDistance, KnownValues) {
  EXPECT_EQ(edit_distance(std::string_view("kitten"), std::string_view("sitting")), 3u);
  EXPECT_EQ(edit_distance(std::string_view(""), std::string_view("abc")), 3u);
  EXPECT_EQ(edit_distance(std::string_view("abc"), std::string_view("abc")), 0u);
  EXPECT_EQ(edit_distance(std::string_view("candiudature"), std::string_view("candidature")),
            dp_edit_distance(U"candiudature", U"candidature"));
}

TEST(EditDistance, CountsCodePointsNotBytes) {
  EXPECT_EQ(edit_distance(std::string_view("économie"), std::string_view("economie")), 1u);
  EXPECT_EQ(edit_distance(std::string_view("é"), std::string_view("")), 1u);
}

TEST(EditDistance, AgreesWithOracleOnRandomPairs) {
  std::mt19937_64 rng(20260302);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_word(rng, 12);
    const auto b = random_word(rng, 12);
    const std::size_t expected = dp_edit_distance(a, b);
    ASSERT_EQ(edit_distance(a, b), expected) << utf8::encode(a) << " / " << utf8::encode(b);
    ASSERT_EQ(edit_distance(utf8::encode(a), utf8::encode(b)), expected);
  }
}

TEST(EditDistance, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_word(rng, 12);
    const auto b = random_word(rng, 12);
    const auto c = random_word(rng, 12);
    const auto ab = edit_distance(a, b);
    ASSERT_EQ(edit_distance(a, a), 0u);
    ASSERT_EQ(ab == 0, a == b);
    ASSERT_EQ(ab, edit_distance(b, a));
    ASSERT_LE(edit_distance(a, c), ab + edit_distance(b, c));
  }
}

TEST(EditDistance, BoundedMatchesFullWithinBound) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_word(rng, 12);
    const auto b = random_word(rng, 12);
    const std::size_t full = dp_edit_distance(a, b);
    for (std::size_t bound : {0u, 1u, 2u, 3u, 12u}) {
      auto got = bounded_edit_distance(a, b, bound);
      if (full <= bound) {
        ASSERT_TRUE(got.has_value());
        ASSERT_EQ(*got, full);
      } else {
        ASSERT_FALSE(got.has_value());
      }
    }
  }
}

}  // namespace
}  // namespace logoscope
