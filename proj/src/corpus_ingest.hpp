// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "article.hpp"
#include "date.hpp"

namespace logoscope {

struct FeedConfig {
  std::string journal_name;
  std::string feed_url;
  bool fetch_enabled = true;
};

// Reads `journal_name<TAB>feed_url<TAB>fetch_enabled` records; '#' comments and
// an optional header line are skipped. Relative `file:` urls are resolved
// against the config file's directory.
std::vector<FeedConfig> load_feed_configs(const std::filesystem::path& path);

bool is_syntactic_url(std::string_view url);

// Resolves `ref` against `base` (absolute urls pass through).
std::string resolve_url(std::string_view base, std::string_view ref);

// Retrieves a document by url. Implementations must be safe to call from
// several threads at once.
class DocumentFetcher {
 public:
  virtual ~DocumentFetcher() = default;
  // Throws Error(kIo, "FetchFailed") on failure.
  virtual std::string fetch(const std::string& url) = 0;
};

// http(s) through libcurl, `file:` urls from the local filesystem.
class DefaultFetcher final : public DocumentFetcher {
 public:
  DefaultFetcher();
  ~DefaultFetcher() override;
  std::string fetch(const std::string& url) override;
};

struct FeedItem {
  std::string link;
  std::string title;
  std::optional<Date> publication_date;
  std::optional<std::string> author;
};

// Parses RSS 2.0, RSS 1.0 (RDF) and Atom. Throws Error(kParse, "MalformedFeed").
std::vector<FeedItem> parse_feed(std::string_view document);

// Visible body paragraphs in document order. Throws
// Error(kParse, "EmptyExtraction") when nothing survives.
std::vector<std::string> extract_content(std::string_view raw_document);

struct FeedFailure {
  std::string journal;
  std::string feed_url;
  std::string kind;
  std::string message;
};

struct FetchResult {
  CorpusBatch batch;
  std::vector<FeedFailure> failures;
  std::size_t items_seen = 0;
  std::size_t duplicates = 0;
  std::size_t empty_extractions = 0;
  std::size_t article_fetch_errors = 0;
};

// Throws Error(kInvalidArgument, "NoEnabledFeeds") or
// Error(kIo, "AllFeedsUnreachable").
FetchResult fetch_feeds(const std::vector<FeedConfig>& configs, const Date& batch_date,
                        DocumentFetcher& fetcher, std::size_t max_parallel = 4);

struct StoreCounts {
  std::size_t articles = 0;
  std::size_t paragraphs = 0;
};

// `corpus/YYYY-MM-DD.jsonl`, one article object per line. A batch becomes
// read-only once finalized (candidate detection has run on it).
class BatchStore {
 public:
  explicit BatchStore(std::filesystem::path root);

  // Appends articles whose url is not yet stored. Throws
  // Error(kState, "BatchAlreadyFinalized") if new articles arrive for a
  // finalized date.
  StoreCounts store_batch(const CorpusBatch& batch);
  CorpusBatch load(const Date& date) const;
  bool exists(const Date& date) const;

  void finalize(const Date& date);
  bool is_finalized(const Date& date) const;

  std::vector<Date> dates() const;
  std::optional<Article> find_article(std::string_view article_id) const;

  std::filesystem::path path_for(const Date& date) const;
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  mutable std::mutex write_mutex_;
};

}  // namespace logoscope
