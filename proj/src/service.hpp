// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "error.hpp"
#include "workspace.hpp"

namespace logoscope {

inline constexpr std::string_view kApiPrefix = "/api/v1";

using QueryParams = std::map<std::string, std::string, std::less<>>;

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Parses `a=1&b=x%20y` with percent and plus decoding.
QueryParams parse_query_string(std::string_view query);

// Maps a core error onto an HTTP status.
int http_status_for(const Error& e);

// Request routing over a workspace, usable without sockets. GET requests take
// a shared lock on knowledge-base reads; everything else is serialized.
class ApiRouter {
 public:
  explicit ApiRouter(Workspace& workspace);

  // `path` may use the /api/v1 prefix or the unversioned /api alias.
  ApiResponse handle(std::string_view method, std::string_view path, const QueryParams& query,
                     std::string_view body);

  // Digest of the knowledge base and every file of the data directory.
  std::string state_hash();

 private:
  ApiResponse route(std::string_view method, std::string_view path, const QueryParams& query, std::string_view body);

  Workspace& ws_;
  std::shared_mutex mutex_;
};

QueryFilter parse_query_filter(const QueryParams& query);

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> static_dir;
  std::string cors_origin = "*";
};

// HTTP binding of ApiRouter.
class HttpService {
 public:
  HttpService(Workspace& workspace, ServeOptions options);
  ~HttpService();

  // Binds the socket; returns the bound port. Throws BindFailed.
  int bind();
  // Serves until stop(); call bind() first.
  void run();
  void stop();
  ApiRouter& router();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace logoscope
