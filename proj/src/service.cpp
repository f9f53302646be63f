// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "service.hpp"

#include <httplib.h>

#include <algorithm>
#include <charconv>
#include <mutex>

#include <spdlog/spdlog.h>

#include "error.hpp"
#include "file_util.hpp"

namespace logoscope {

namespace {

using nlohmann::json;

ApiResponse json_response(int status, const json& body) { return {status, body.dump(), "application/json"}; }

ApiResponse error_response(int status, std::string_view kind, std::string_view message) {
  return json_response(status, {{"error", kind}, {"message", message}});
}

std::vector<std::string_view> path_segments(std::string_view path) {
  std::vector<std::string_view> out;
  for (auto s : split(path, '/')) {
    if (!s.empty()) out.push_back(s);
  }
  return out;
}

std::int64_t parse_wid(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "BadWid", std::string(s));
  }
  return v;
}

std::size_t parse_count(std::string_view name, std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error(ErrorCode::kInvalidArgument, "BadParameter", std::string(name) + "=" + std::string(s));
  }
  return v;
}

bool parse_flag(std::string_view name, std::string_view s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw Error(ErrorCode::kInvalidArgument, "BadParameter", std::string(name) + "=" + std::string(s));
}

Date parse_date_param(std::string_view name, std::string_view s) {
  auto d = Date::parse(s);
  if (!d) throw Error(ErrorCode::kInvalidArgument, "BadParameter", std::string(name) + "=" + std::string(s));
  return *d;
}

const std::string* param(const QueryParams& q, std::string_view key) {
  auto it = q.find(key);
  return it == q.end() || it->second.empty() ? nullptr : &it->second;
}

}  // namespace

QueryParams parse_query_string(std::string_view query) {
  httplib::Params params;
  httplib::detail::parse_query_text(std::string(query), params);
  QueryParams out;
  for (const auto& [k, v] : params) out[k] = v;
  return out;
}

int http_status_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kConflict:
    case ErrorCode::kState:
      return 409;
    case ErrorCode::kInvariant:
      return 422;
    default:
      return 500;
  }
}

QueryFilter parse_query_filter(const QueryParams& q) {
  QueryFilter f;
  if (auto v = param(q, "q")) f.regex = *v;
  if (auto v = param(q, "pos")) f.pos = parse_word_pos(*v);
  if (auto v = param(q, "proc")) f.process = parse_process(*v);
  if (auto v = param(q, "journal")) f.journal = *v;
  if (auto v = param(q, "theme")) f.theme = *v;
  if (auto v = param(q, "from")) f.from = parse_date_param("from", *v);
  if (auto v = param(q, "to")) f.to = parse_date_param("to", *v);
  if (auto v = param(q, "quoted")) f.quoted = parse_flag("quoted", *v);
  if (auto v = param(q, "page")) f.page = parse_count("page", *v);
  if (auto v = param(q, "page_size")) f.page_size = parse_count("page_size", *v);
  return f;
}

ApiRouter::ApiRouter(Workspace& workspace) : ws_(workspace) { ws_.kb(); }

ApiResponse ApiRouter::handle(std::string_view method, std::string_view path, const QueryParams& query,
                              std::string_view body) {
  try {
    return route(method, path, query, body);
  } catch (const Error& e) {
    return error_response(http_status_for(e), e.kind(), e.what());
  } catch (const json::exception& e) {
    return error_response(400, "BadJson", e.what());
  } catch (const std::exception& e) {
    spdlog::error("{} {}: {}", method, path, e.what());
    return error_response(500, "Internal", e.what());
  }
}

ApiResponse ApiRouter::route(std::string_view method, std::string_view path, const QueryParams& query,
                             std::string_view body) {
  auto seg = path_segments(path);
  std::size_t base = 0;
  if (seg.size() >= 2 && seg[0] == "api" && seg[1] == "v1") {
    base = 2;
  } else if (!seg.empty() && seg[0] == "api") {
    base = 1;
  } else {
    return error_response(404, "NoRoute", path);
  }
  std::vector<std::string_view> r(seg.begin() + static_cast<std::ptrdiff_t>(base), seg.end());
  if (r.empty()) return error_response(404, "NoRoute", path);

  if (method == "GET") {
    if (r.size() == 1 && r[0] == "health") return json_response(200, {{"status", "ok"}});
    if (r[0] == "words" && r.size() == 1) {
      QueryFilter filter = parse_query_filter(query);
      std::shared_lock lock(mutex_);
      QueryPage page = ws_.kb().query(filter);
      return json_response(
          200, {{"items", page.items}, {"total", page.total}, {"page", page.page}, {"page_size", page.page_size}});
    }
    if (r[0] == "words" && r.size() == 2) {
      std::int64_t wid = parse_wid(r[1]);
      std::shared_lock lock(mutex_);
      auto entry = ws_.kb().entry(wid);
      if (!entry) return error_response(404, "UnknownWord", std::to_string(wid));
      return json_response(200, *entry);
    }
    if (r[0] == "stats" && r.size() == 2) {
      StatsDimension dim = parse_stats_dimension(r[1]);
      std::shared_lock lock(mutex_);
      json rows = json::array();
      std::size_t total = 0;
      for (const auto& row : ws_.kb().stats(dim)) {
        json item = {{"key", row.key}, {"count", row.count}};
        if (dim == StatsDimension::kThemeByMonth) item["month"] = row.bucket;
        rows.push_back(item);
        total += row.count;
      }
      return json_response(200, {{"dimension", to_string(dim)}, {"rows", rows}, {"total", total}});
    }
    if (r[0] == "articles" && r.size() == 3 && r[2] == "coloring") {
      std::unique_lock lock(mutex_);
      std::string id(r[1]);
      auto article = ws_.find_article(id);
      if (!article) return error_response(404, "UnknownArticle", id);
      json out = to_json(ws_.analyze(id));
      out["article_id"] = id;
      out["journal"] = article->journal;
      out["paragraphs"] = article->paragraphs;
      return json_response(200, out);
    }
    if (r[0] == "candidates" && r.size() == 1) {
      std::optional<Date> date;
      if (auto v = param(query, "date")) date = parse_date_param("date", *v);
      std::unique_lock lock(mutex_);
      auto items = ws_.pending(date);
      return json_response(200, {{"items", items}, {"total", items.size()}});
    }
    return error_response(404, "NoRoute", path);
  }

  if (method == "POST" && r.size() == 3 && r[0] == "candidates" && r[2] == "decision") {
    std::int64_t wid = parse_wid(r[1]);
    json in = json::parse(body);
    if (!in.is_object()) return error_response(400, "BadJson", "object expected");
    CandidateRow row;
    row.wid = wid;
    const json& valid = in.at("valid");
    row.valid = valid.is_boolean() ? valid.get<bool>() : valid.get<int>() != 0;
    row.pos = in.value("pos", std::string());
    if (in.contains("proc")) {
      const json& proc = in.at("proc");
      if (proc.is_array()) {
        for (const auto& p : proc) row.proc += (row.proc.empty() ? "" : "+") + p.get<std::string>();
      } else if (!proc.is_null()) {
        row.proc = proc.get<std::string>();
      }
    }
    std::optional<Date> date;
    if (in.contains("date")) date = Date::parse_or_throw(in.at("date").get<std::string>());
    std::optional<std::string> annotator;
    if (in.contains("annotator") && !in.at("annotator").is_null()) annotator = in.at("annotator").get<std::string>();

    std::unique_lock lock(mutex_);
    auto surface = ws_.surface_of(wid);
    if (!surface) return error_response(404, "UnknownWid", std::to_string(wid));
    row.word = in.value("word", *surface);
    DecisionOutcome outcome = ws_.decide(row, date, annotator);
    switch (outcome.status) {
      case DecisionStatus::kInvalid:
        return error_response(422, "RowInvalid", outcome.message);
      case DecisionStatus::kUnknown:
        return error_response(404, "UnknownWid", outcome.message);
      case DecisionStatus::kAlreadyDecided:
        return error_response(409, "AlreadyDecided", outcome.message);
      case DecisionStatus::kApplied:
        break;
    }
    json out = {{"wid", wid}, {"word", row.word}, {"valid", row.valid}, {"report", outcome.report}};
    if (auto entry = ws_.kb().entry(wid)) out["entry"] = *entry;
    return json_response(200, out);
  }
  if (method != "GET" && method != "POST") return error_response(405, "MethodNotAllowed", method);
  return error_response(404, "NoRoute", path);
}

std::string ApiRouter::state_hash() {
  std::unique_lock lock(mutex_);
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(ws_.dir())) {
    if (!e.is_regular_file()) continue;
    if (e.path().filename().string().starts_with("kb.sqlite")) continue;
    files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string digest = ws_.kb().content_hash();
  for (const auto& f : files) {
    digest += hex64(fnv1a64(std::filesystem::relative(f, ws_.dir()).string() + '\0' + read_file(f)));
  }
  return hex64(fnv1a64(digest));
}

struct HttpService::Impl {
  Impl(Workspace& ws, ServeOptions o) : router(ws), options(std::move(o)) {}
  ApiRouter router;
  ServeOptions options;
  httplib::Server server;
  int port = 0;
};

HttpService::HttpService(Workspace& workspace, ServeOptions options)
    : impl_(std::make_unique<Impl>(workspace, std::move(options))) {
  auto& srv = impl_->server;
  Impl* impl = impl_.get();
  srv.set_default_headers({{"Access-Control-Allow-Origin", impl->options.cors_origin},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  auto dispatch = [impl](const httplib::Request& req, httplib::Response& res) {
    QueryParams q;
    for (const auto& [k, v] : req.params) q[k] = v;
    ApiResponse r = impl->router.handle(req.method, req.path, q, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  srv.Get(R"(/api/.*)", dispatch);
  srv.Post(R"(/api/.*)", dispatch);
  srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  if (impl->options.static_dir) srv.set_mount_point("/", impl->options.static_dir->string());
}

HttpService::~HttpService() { stop(); }

int HttpService::bind() {
  auto& o = impl_->options;
  if (o.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(o.host);
  } else {
    impl_->port = impl_->server.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (impl_->port <= 0) throw Error(ErrorCode::kIo, "BindFailed", o.host + ":" + std::to_string(o.port));
  return impl_->port;
}

void HttpService::run() {
  spdlog::info("serving on {}:{}", impl_->options.host, impl_->port);
  impl_->server.listen_after_bind();
}

void HttpService::stop() {
  if (impl_) impl_->server.stop();
}

ApiRouter& HttpService::router() { return impl_->router; }

}  // namespace logoscope
