// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "corpus_ingest.hpp"

#include <curl/curl.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <future>
#include <memory>
#include <unordered_set>

#include "error.hpp"
#include "file_util.hpp"
#include "markup.hpp"

namespace logoscope {

namespace {

bool starts_with_scheme(std::string_view url, std::string_view scheme) {
  if (url.size() < scheme.size() + 1) return false;
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(url[i])) != scheme[i]) return false;
  }
  return url[scheme.size()] == ':';
}

std::string file_url_path(std::string_view url) {
  std::string_view rest = url.substr(5);  // after "file:"
  if (rest.substr(0, 2) == "//") {
    rest.remove_prefix(2);
    const auto slash = rest.find('/');
    rest = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash);
  }
  return std::string(rest);
}

}  // namespace

bool is_syntactic_url(std::string_view url) {
  const auto colon = url.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 >= url.size()) return false;
  if (!std::isalpha(static_cast<unsigned char>(url[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const char c = url[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
  }
  return std::none_of(url.begin(), url.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::string resolve_url(std::string_view base, std::string_view ref) {
  if (is_syntactic_url(ref)) {
    if (starts_with_scheme(ref, "file") && starts_with_scheme(base, "file")) {
      const std::string path = file_url_path(ref);
      if (!path.empty() && path.front() != '/') {
        const std::filesystem::path dir = std::filesystem::path(file_url_path(base)).parent_path();
        return "file:" + (dir / path).lexically_normal().string();
      }
    }
    return std::string(ref);
  }
  if (starts_with_scheme(base, "file")) {
    const std::filesystem::path dir = std::filesystem::path(file_url_path(base)).parent_path();
    const std::filesystem::path target = !ref.empty() && ref.front() == '/' ? std::filesystem::path(ref)
                                                                             : dir / std::filesystem::path(ref);
    return "file:" + target.lexically_normal().string();
  }
  std::unique_ptr<CURLU, decltype(&curl_url_cleanup)> url(curl_url(), &curl_url_cleanup);
  if (!url || curl_url_set(url.get(), CURLUPART_URL, std::string(base).c_str(), 0) != CURLUE_OK ||
      curl_url_set(url.get(), CURLUPART_URL, std::string(ref).c_str(), 0) != CURLUE_OK) {
    return std::string(ref);
  }
  char* resolved = nullptr;
  if (curl_url_get(url.get(), CURLUPART_URL, &resolved, 0) != CURLUE_OK) return std::string(ref);
  std::string out(resolved);
  curl_free(resolved);
  return out;
}

std::vector<FeedConfig> load_feed_configs(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const std::filesystem::path dir = std::filesystem::absolute(path).parent_path();
  std::vector<FeedConfig> configs;
  std::size_t line_no = 0;
  for (const std::string& raw : split_lines(text)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() < 2) {
      throw Error(ErrorCode::kParse, "BadFeedConfig", path.string() + ":" + std::to_string(line_no) + ": expected 3 tab-separated fields");
    }
    const std::string_view journal = trim(fields[0]);
    const std::string_view url = trim(fields[1]);
    if (configs.empty() && journal == "journal_name") continue;  // header
    FeedConfig cfg;
    cfg.journal_name = std::string(journal);
    cfg.feed_url = std::string(url);
    if (fields.size() >= 3) {
      const std::string_view flag = trim(fields[2]);
      cfg.fetch_enabled = !(flag == "0" || flag == "false" || flag == "no");
    }
    if (cfg.journal_name.empty()) {
      throw Error(ErrorCode::kInvariant, "BadFeedConfig", "empty journal_name at line " + std::to_string(line_no));
    }
    if (!is_syntactic_url(cfg.feed_url)) {
      throw Error(ErrorCode::kInvariant, "BadFeedConfig", "not a url: '" + cfg.feed_url + "'");
    }
    if (starts_with_scheme(cfg.feed_url, "file")) {
      const std::string p = file_url_path(cfg.feed_url);
      if (!p.empty() && p.front() != '/') cfg.feed_url = "file:" + (dir / p).lexically_normal().string();
    }
    configs.push_back(std::move(cfg));
  }
  return configs;
}

// --- fetching ---------------------------------------------------------------

namespace {

std::size_t curl_write(char* ptr, std::size_t size, std::size_t nmemb, void* userdata) {
  static_cast<std::string*>(userdata)->append(ptr, size * nmemb);
  return size * nmemb;
}

}  // namespace

DefaultFetcher::DefaultFetcher() { curl_global_init(CURL_GLOBAL_DEFAULT); }
DefaultFetcher::~DefaultFetcher() { curl_global_cleanup(); }

std::string DefaultFetcher::fetch(const std::string& url) {
  if (starts_with_scheme(url, "file")) {
    try {
      return read_file(file_url_path(url));
    } catch (const Error& e) {
      throw Error(ErrorCode::kIo, "FetchFailed", e.what());
    }
  }
  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), &curl_easy_cleanup);
  if (!curl) throw Error(ErrorCode::kIo, "FetchFailed", "curl_easy_init failed");
  std::string body;
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_MAXREDIRS, 5L);
  curl_easy_setopt(curl.get(), CURLOPT_TIMEOUT, 30L);
  curl_easy_setopt(curl.get(), CURLOPT_NOSIGNAL, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_USERAGENT, "logoscope/1.0");
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, &curl_write);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &body);
  const CURLcode rc = curl_easy_perform(curl.get());
  if (rc != CURLE_OK) throw Error(ErrorCode::kIo, "FetchFailed", url + ": " + curl_easy_strerror(rc));
  long status = 0;
  curl_easy_getinfo(curl.get(), CURLINFO_RESPONSE_CODE, &status);
  if (status >= 400) throw Error(ErrorCode::kIo, "FetchFailed", url + ": HTTP " + std::to_string(status));
  return body;
}

// --- feeds ------------------------------------------------------------------

namespace {

using markup::Node;

void collect(const Node& node, const std::unordered_set<std::string_view>& names, std::vector<const Node*>& out) {
  for (const auto& child : node.children) {
    if (child->is_text()) continue;
    if (names.contains(child->tag)) {
      out.push_back(child.get());
      continue;
    }
    collect(*child, names, out);
  }
}

const Node* child_named(const Node& node, std::string_view name) {
  for (const auto& child : node.children) {
    if (!child->is_text() && child->tag == name) return child.get();
  }
  return nullptr;
}

std::string clean_text(const Node& node) {
  return markup::normalize_space(markup::decode_entities(markup::inner_text(node)));
}

}  // namespace

std::vector<FeedItem> parse_feed(std::string_view document) {
  const auto root = markup::parse(document, markup::Mode::kXml);
  std::vector<const Node*> roots;
  collect(*root, {"rss", "feed", "rdf:rdf", "channel"}, roots);
  if (roots.empty()) throw Error(ErrorCode::kParse, "MalformedFeed", "no rss/atom root element");

  std::vector<const Node*> items;
  for (const Node* r : roots) collect(*r, {"item", "entry"}, items);

  std::vector<FeedItem> out;
  for (const Node* item : items) {
    FeedItem fi;
    for (const auto& child : item->children) {
      if (child->is_text()) continue;
      const std::string& tag = child->tag;
      if (tag == "link") {
        if (const std::string* href = child->attribute("href")) {
          const std::string* rel = child->attribute("rel");
          if (fi.link.empty() || (rel && *rel == "alternate")) fi.link = markup::decode_entities(*href);
        } else if (fi.link.empty()) {
          fi.link = clean_text(*child);
        }
      } else if (tag == "guid" && fi.link.empty()) {
        const std::string* perma = child->attribute("ispermalink");
        if (!perma || *perma != "false") fi.link = clean_text(*child);
      } else if (tag == "title") {
        fi.title = clean_text(*child);
      } else if (tag == "pubdate" || tag == "dc:date" || tag == "published" ||
                 (tag == "updated" && !fi.publication_date)) {
        if (auto d = parse_feed_date(clean_text(*child))) fi.publication_date = d;
      } else if (tag == "author" || tag == "dc:creator") {
        const Node* name = child_named(*child, "name");
        std::string who = clean_text(name ? *name : *child);
        if (!who.empty()) fi.author = std::move(who);
      }
    }
    if (!fi.link.empty()) out.push_back(std::move(fi));
  }
  return out;
}

// --- content extraction -----------------------------------------------------

namespace {

const std::unordered_set<std::string_view>& dropped_tags() {
  static const std::unordered_set<std::string_view> kDropped = {
      "script", "style", "nav", "aside", "footer", "header", "noscript", "iframe", "form",
      "svg", "template", "button", "select", "object", "embed", "canvas", "head"};
  return kDropped;
}

bool is_ad_token(std::string_view token) {
  static const std::unordered_set<std::string_view> kAdTokens = {
      "ad", "ads", "advert", "advertisement", "advertising", "pub", "publicite", "banner", "sponsor",
      "sponsored", "promo", "social", "share", "related", "newsletter", "comments", "cookie", "outbrain"};
  return kAdTokens.contains(token);
}

bool looks_like_ad(const Node& node) {
  for (const char* attr : {"class", "id"}) {
    const std::string* value = node.attribute(attr);
    if (!value) continue;
    std::string token;
    for (std::size_t i = 0; i <= value->size(); ++i) {
      const char c = i < value->size() ? (*value)[i] : ' ';
      if (std::isalnum(static_cast<unsigned char>(c))) {
        token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      } else {
        if (is_ad_token(token)) return true;
        token.clear();
      }
    }
  }
  return false;
}

void prune(Node& node) {
  auto& kids = node.children;
  kids.erase(std::remove_if(kids.begin(), kids.end(),
                            [](const std::unique_ptr<Node>& c) {
                              return !c->is_text() && (dropped_tags().contains(c->tag) || looks_like_ad(*c));
                            }),
             kids.end());
  for (auto& c : kids) {
    if (!c->is_text()) prune(*c);
  }
}

struct Densest {
  const Node* node = nullptr;
  std::size_t score = 0;
};

void find_densest(const Node& node, Densest& best) {
  std::size_t score = 0;
  for (const auto& child : node.children) {
    if (!child->is_text() && child->tag == "p") {
      score += markup::normalize_space(markup::decode_entities(markup::inner_text(*child))).size();
    }
  }
  if (score > best.score) best = {&node, score};
  for (const auto& child : node.children) {
    if (!child->is_text()) find_densest(*child, best);
  }
}

const Node* find_tag(const Node& node, std::string_view tag) {
  for (const auto& child : node.children) {
    if (child->is_text()) continue;
    if (child->tag == tag) return child.get();
    if (const Node* found = find_tag(*child, tag)) return found;
  }
  return nullptr;
}

}  // namespace

std::vector<std::string> extract_content(std::string_view raw_document) {
  auto root = markup::parse(raw_document, markup::Mode::kHtml);
  prune(*root);
  Densest best;
  find_densest(*root, best);
  std::vector<std::string> paragraphs;
  if (best.node) {
    for (const auto& child : best.node->children) {
      if (child->is_text() || child->tag != "p") continue;
      std::string text = markup::normalize_space(markup::decode_entities(markup::inner_text(*child)));
      if (!text.empty()) paragraphs.push_back(std::move(text));
    }
  } else {
    // No paragraph markup at all: fall back to the body text as one paragraph.
    const Node* body = find_tag(*root, "body");
    std::string text = markup::normalize_space(markup::decode_entities(markup::inner_text(body ? *body : *root)));
    if (!text.empty()) paragraphs.push_back(std::move(text));
  }
  if (paragraphs.empty()) throw Error(ErrorCode::kParse, "EmptyExtraction", "no paragraph survived extraction");
  return paragraphs;
}

// --- fetch_feeds ------------------------------------------------------------

namespace {

struct FeedOutcome {
  std::vector<Article> articles;
  std::optional<FeedFailure> failure;
  std::size_t items = 0;
  std::size_t empty = 0;
  std::size_t fetch_errors = 0;
};

FeedOutcome fetch_one(const FeedConfig& cfg, const Date& batch_date, DocumentFetcher& fetcher) {
  FeedOutcome out;
  std::vector<FeedItem> items;
  try {
    items = parse_feed(fetcher.fetch(cfg.feed_url));
  } catch (const Error& e) {
    out.failure = FeedFailure{cfg.journal_name, cfg.feed_url, e.kind(), e.what()};
    if (e.kind() == "MalformedFeed") spdlog::warn("skipping malformed feed {}: {}", cfg.feed_url, e.what());
    return out;
  }
  out.items = items.size();
  for (const FeedItem& item : items) {
    const std::string url = resolve_url(cfg.feed_url, item.link);
    Article a;
    a.url = url;
    a.article_id = make_article_id(url);
    a.journal = cfg.journal_name;
    a.fetch_date = batch_date;
    a.publication_date = item.publication_date.value_or(batch_date);
    a.author = item.author;
    try {
      a.paragraphs = extract_content(fetcher.fetch(url));
    } catch (const Error& e) {
      if (e.kind() == "EmptyExtraction") {
        ++out.empty;
      } else {
        ++out.fetch_errors;
        spdlog::warn("article fetch failed for {}: {}", url, e.what());
      }
      continue;
    }
    out.articles.push_back(std::move(a));
  }
  return out;
}

}  // namespace

FetchResult fetch_feeds(const std::vector<FeedConfig>& configs, const Date& batch_date,
                        DocumentFetcher& fetcher, std::size_t max_parallel) {
  std::vector<const FeedConfig*> enabled;
  for (const auto& c : configs) {
    if (c.fetch_enabled) enabled.push_back(&c);
  }
  if (enabled.empty()) throw Error(ErrorCode::kInvalidArgument, "NoEnabledFeeds", "no enabled feed config");
  max_parallel = std::max<std::size_t>(1, max_parallel);

  std::vector<FeedOutcome> outcomes(enabled.size());
  for (std::size_t start = 0; start < enabled.size(); start += max_parallel) {
    const std::size_t stop = std::min(enabled.size(), start + max_parallel);
    std::vector<std::future<FeedOutcome>> inflight;
    for (std::size_t i = start; i < stop; ++i) {
      inflight.push_back(std::async(std::launch::async, fetch_one, std::cref(*enabled[i]), std::cref(batch_date),
                                    std::ref(fetcher)));
    }
    for (std::size_t i = start; i < stop; ++i) outcomes[i] = inflight[i - start].get();
  }

  FetchResult result;
  result.batch.batch_date = batch_date;
  std::unordered_set<std::string> seen;
  for (auto& o : outcomes) {
    result.items_seen += o.items;
    result.empty_extractions += o.empty;
    result.article_fetch_errors += o.fetch_errors;
    if (o.failure) result.failures.push_back(*o.failure);
    for (auto& a : o.articles) {
      if (!seen.insert(a.url).second) {
        ++result.duplicates;
        continue;
      }
      result.batch.articles.push_back(std::move(a));
    }
  }
  if (result.items_seen == 0) {
    throw Error(ErrorCode::kIo, "AllFeedsUnreachable", "no feed yielded any item");
  }
  return result;
}

// --- BatchStore -------------------------------------------------------------

BatchStore::BatchStore(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path BatchStore::path_for(const Date& date) const { return root_ / (date.str() + ".jsonl"); }

bool BatchStore::exists(const Date& date) const { return std::filesystem::exists(path_for(date)); }

bool BatchStore::is_finalized(const Date& date) const {
  return std::filesystem::exists(root_ / (date.str() + ".final"));
}

void BatchStore::finalize(const Date& date) {
  std::lock_guard lock(write_mutex_);
  write_file_atomic(root_ / (date.str() + ".final"), date.str() + "\n");
}

CorpusBatch BatchStore::load(const Date& date) const {
  CorpusBatch batch;
  batch.batch_date = date;
  const auto path = path_for(date);
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kNotFound, "MissingBatch", "no corpus batch for " + date.str());
  }
  for (const std::string& line : split_lines(read_file(path))) {
    if (trim(line).empty()) continue;
    try {
      batch.articles.push_back(nlohmann::json::parse(line).get<Article>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "BadArticleRecord", path.string() + ": " + e.what());
    }
  }
  return batch;
}

StoreCounts BatchStore::store_batch(const CorpusBatch& batch) {
  std::lock_guard lock(write_mutex_);
  for (const auto& a : batch.articles) {
    if (a.fetch_date != batch.batch_date) {
      throw Error(ErrorCode::kInvariant, "FetchDateMismatch", a.url + " fetched " + a.fetch_date.str() +
                                                                  " stored under " + batch.batch_date.str());
    }
    if (a.paragraphs.empty()) throw Error(ErrorCode::kInvariant, "EmptyArticle", a.url);
  }
  std::unordered_set<std::string> stored_urls;
  if (exists(batch.batch_date)) {
    for (const auto& a : load(batch.batch_date).articles) stored_urls.insert(a.url);
  }
  std::string lines;
  StoreCounts counts;
  for (const auto& a : batch.articles) {
    if (!stored_urls.insert(a.url).second) continue;
    lines += nlohmann::json(a).dump() + "\n";
    ++counts.articles;
    counts.paragraphs += a.paragraphs.size();
  }
  if (counts.articles == 0) return counts;
  if (is_finalized(batch.batch_date)) {
    throw Error(ErrorCode::kState, "BatchAlreadyFinalized", batch.batch_date.str());
  }
  append_to_file(path_for(batch.batch_date), lines);
  return counts;
}

std::vector<Date> BatchStore::dates() const {
  std::vector<Date> out;
  if (!std::filesystem::exists(root_)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(root_)) {
    if (entry.path().extension() != ".jsonl") continue;
    if (auto d = Date::parse(entry.path().stem().string())) out.push_back(*d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Article> BatchStore::find_article(std::string_view article_id) const {
  for (const Date& d : dates()) {
    for (auto& a : load(d).articles) {
      if (a.article_id == article_id) return std::move(a);
    }
  }
  return std::nullopt;
}

}  // namespace logoscope
