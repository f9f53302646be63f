// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "article.hpp"

#include "error.hpp"
#include "file_util.hpp"

namespace logoscope {

std::string make_article_id(const std::string& url) { return "a" + hex64(fnv1a64(url)); }

void to_json(nlohmann::json& j, const Article& a) {
  j = nlohmann::json{
      {"article_id", a.article_id},
      {"journal", a.journal},
      {"url", a.url},
      {"fetch_date", a.fetch_date.str()},
      {"publication_date", a.publication_date ? nlohmann::json(a.publication_date->str()) : nlohmann::json(nullptr)},
      {"author", a.author ? nlohmann::json(*a.author) : nlohmann::json(nullptr)},
      {"paragraphs", a.paragraphs},
  };
}

void from_json(const nlohmann::json& j, Article& a) {
  try {
    a.article_id = j.at("article_id").get<std::string>();
    a.journal = j.at("journal").get<std::string>();
    a.url = j.at("url").get<std::string>();
    a.fetch_date = Date::parse_or_throw(j.at("fetch_date").get<std::string>());
    const auto& pub = j.at("publication_date");
    a.publication_date = pub.is_null() ? std::nullopt
                                       : std::optional<Date>(Date::parse_or_throw(pub.get<std::string>()));
    const auto& author = j.at("author");
    a.author = author.is_null() ? std::nullopt : std::optional<std::string>(author.get<std::string>());
    a.paragraphs = j.at("paragraphs").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, "BadArticleRecord", e.what());
  }
}

}  // namespace logoscope
