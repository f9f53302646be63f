// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "date.hpp"

namespace logoscope {

struct Article {
  std::string article_id;
  std::string journal;
  std::string url;
  Date fetch_date;
  std::optional<Date> publication_date;
  std::optional<std::string> author;
  std::vector<std::string> paragraphs;

  // publication_date, falling back to the fetch date.
  Date effective_date() const { return publication_date.value_or(fetch_date); }

  friend bool operator==(const Article&, const Article&) = default;
};

struct CorpusBatch {
  Date batch_date;
  std::vector<Article> articles;
};

// Stable id derived from the article url.
std::string make_article_id(const std::string& url);

void to_json(nlohmann::json& j, const Article& a);
void from_json(const nlohmann::json& j, Article& a);

}  // namespace logoscope
