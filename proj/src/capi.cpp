// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "logoscope/logoscope.h"

#include <csignal>
#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include <pthread.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "error.hpp"
#include "service.hpp"
#include "workspace.hpp"

namespace {

// Diagnostics go to stderr so that stdout carries only JSON results.
bool route_logs_to_stderr() {
  static const bool done = [] {
    spdlog::set_default_logger(spdlog::stderr_color_mt("logoscope"));
    return true;
  }();
  return done;
}

}  // namespace

struct lgs_workspace {
  explicit lgs_workspace(const char* dir) : ws((route_logs_to_stderr(), dir)), router(ws) {}
  logoscope::Workspace ws;
  logoscope::ApiRouter router;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;
thread_local std::string g_last_kind;

lgs_status fail(lgs_status status, std::string kind, std::string message) {
  g_last_kind = std::move(kind);
  g_last_error = std::move(message);
  return status;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::optional<std::string> opt(const char* s) {
  if (!s || !*s) return std::nullopt;
  return std::string(s);
}

std::optional<std::filesystem::path> opt_path(const char* s) {
  if (!s || !*s) return std::nullopt;
  return std::filesystem::path(s);
}

logoscope::Date required_date(const char* s) {
  if (!s) throw logoscope::Error(logoscope::ErrorCode::kInvalidArgument, "MissingDate", "date is required");
  return logoscope::Date::parse_or_throw(s);
}

template <typename F>
lgs_status guarded(lgs_workspace* ws, char** out, F&& body) {
  g_last_error.clear();
  g_last_kind.clear();
  if (!ws) return fail(LGS_INVALID_ARGUMENT, "NullHandle", "workspace handle is null");
  if (out) *out = nullptr;
  try {
    json result = body(*ws);
    if (out) *out = dup_string(result.dump());
    return LGS_OK;
  } catch (const logoscope::Error& e) {
    return fail(static_cast<lgs_status>(e.code()), e.kind(), e.what());
  } catch (const json::exception& e) {
    return fail(LGS_PARSE, "BadJson", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(LGS_IO, "Filesystem", e.what());
  } catch (const std::exception& e) {
    return fail(LGS_INTERNAL, "Internal", e.what());
  }
}

}  // namespace

extern "C" {

const char* lgs_version(void) { return "0.1.0"; }
const char* lgs_last_error(void) { return g_last_error.c_str(); }
const char* lgs_last_error_kind(void) { return g_last_kind.c_str(); }
void lgs_string_free(char* s) { std::free(s); }

lgs_status lgs_init(const char* data_dir, char** out_json) {
  g_last_error.clear();
  g_last_kind.clear();
  if (out_json) *out_json = nullptr;
  if (!data_dir) return fail(LGS_INVALID_ARGUMENT, "MissingDataDir", "data directory is required");
  try {
    auto config = logoscope::Workspace::init(data_dir);
    if (out_json) *out_json = dup_string(json{{"config", config.string()}}.dump());
    return LGS_OK;
  } catch (const logoscope::Error& e) {
    return fail(static_cast<lgs_status>(e.code()), e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail(LGS_IO, "Filesystem", e.what());
  }
}

lgs_status lgs_workspace_open(const char* data_dir, lgs_workspace** out) {
  g_last_error.clear();
  g_last_kind.clear();
  if (!out) return fail(LGS_INVALID_ARGUMENT, "NullHandle", "output handle is null");
  *out = nullptr;
  if (!data_dir) return fail(LGS_INVALID_ARGUMENT, "MissingDataDir", "data directory is required");
  try {
    *out = new lgs_workspace(data_dir);
    return LGS_OK;
  } catch (const logoscope::Error& e) {
    return fail(static_cast<lgs_status>(e.code()), e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail(LGS_INTERNAL, "Internal", e.what());
  }
}

void lgs_workspace_close(lgs_workspace* ws) { delete ws; }

lgs_status lgs_fetch(lgs_workspace* ws, const char* date, const char* feeds_path, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) { return json(w.ws.fetch(required_date(date), opt_path(feeds_path))); });
}

lgs_status lgs_detect(lgs_workspace* ws, const char* date, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) { return json(w.ws.detect(required_date(date))); });
}

lgs_status lgs_train(lgs_workspace* ws, const char* history_dir, const char* mask, const char* model_out,
                     char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    return json(w.ws.train(opt_path(history_dir), opt(mask), opt_path(model_out)));
  });
}

lgs_status lgs_eval(lgs_workspace* ws, int folds, const char* history_dir, const char* mask, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    if (folds < 2) throw logoscope::Error(logoscope::ErrorCode::kInvalidArgument, "BadFolds", std::to_string(folds));
    auto report = w.ws.evaluate(static_cast<std::size_t>(folds), opt_path(history_dir), opt(mask));
    json out = logoscope::to_json(report);
    out["table"] = report.table();
    return out;
  });
}

lgs_status lgs_rank(lgs_workspace* ws, const char* date, const char* model_path, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    return json{{"ranking", w.ws.rank(required_date(date), opt_path(model_path))}};
  });
}

lgs_status lgs_export_candidates(lgs_workspace* ws, const char* date, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) { return json(w.ws.export_candidates(required_date(date))); });
}

lgs_status lgs_import_decisions(lgs_workspace* ws, const char* csv_path, const char* decision_date,
                                const char* annotator, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    if (!csv_path) throw logoscope::Error(logoscope::ErrorCode::kInvalidArgument, "MissingFile", "file is required");
    std::optional<logoscope::Date> when;
    if (decision_date && *decision_date) when = logoscope::Date::parse_or_throw(decision_date);
    return json(w.ws.import_decisions(csv_path, when, opt(annotator)));
  });
}

lgs_status lgs_monitor(lgs_workspace* ws, const char* date, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    json added = json::array();
    for (const auto& [wid, occ] : w.ws.monitor(required_date(date))) added.push_back({{"wid", wid}, {"occurrence", occ}});
    return json{{"added", added.size()}, {"occurrences", added}};
  });
}

lgs_status lgs_run_daily(lgs_workspace* ws, const char* date, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) { return w.ws.run_daily(required_date(date)); });
}

lgs_status lgs_topics_train(lgs_workspace* ws, const char* corpus_dir, const char* options_json, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    logoscope::LdaConfig lda = w.ws.config().topics.lda;
    if (options_json && *options_json) {
      json o = json::parse(options_json);
      lda.k = o.value("k", lda.k);
      lda.alpha = o.value("alpha", lda.alpha);
      lda.beta = o.value("beta", lda.beta);
      lda.iterations = o.value("iterations", lda.iterations);
      lda.seed = o.value("seed", lda.seed);
    }
    auto model = w.ws.train_topics(opt_path(corpus_dir), lda);
    return json{{"k", model.k()},
                {"vocabulary", model.vocabulary().size()},
                {"alpha", model.alpha()},
                {"beta", model.beta()},
                {"iterations", model.iterations()},
                {"seed", model.seed()},
                {"model", w.ws.topics_path().string()}};
  });
}

lgs_status lgs_topics_show(lgs_workspace* ws, int topic, int n, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    const auto& model = w.ws.topic_model();
    if (n <= 0) throw logoscope::Error(logoscope::ErrorCode::kInvalidArgument, "BadCount", std::to_string(n));
    json topics = json::array();
    std::size_t first = topic < 0 ? 0 : static_cast<std::size_t>(topic);
    std::size_t last = topic < 0 ? model.k() : first + 1;
    for (std::size_t t = first; t < last; ++t) {
      json words = json::array();
      for (const auto& [term, p] : model.top_words(t, static_cast<std::size_t>(n))) words.push_back({{"term", term}, {"p", p}});
      topics.push_back({{"topic", t}, {"words", words}});
    }
    return json{{"topics", topics}};
  });
}

lgs_status lgs_topics_infer(lgs_workspace* ws, const char* text, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    auto r = w.ws.infer_topics(text ? text : "");
    return json{{"proportions", r.proportions}, {"out_of_vocabulary", r.out_of_vocabulary}};
  });
}

lgs_status lgs_themes_match(lgs_workspace* ws, const char* article_id, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    if (!article_id) throw logoscope::Error(logoscope::ErrorCode::kInvalidArgument, "MissingArticle", "article id is required");
    json out = logoscope::to_json(w.ws.analyze(article_id));
    out["article_id"] = article_id;
    return out;
  });
}

lgs_status lgs_kb_export(lgs_workspace* ws, const char* out_path, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    std::filesystem::path out = out_path && *out_path ? std::filesystem::path(out_path) : w.ws.dir() / "kb-export.jsonl";
    w.ws.kb_export(out);
    return json{{"entries", w.ws.kb().size()}, {"path", out.string()}};
  });
}

lgs_status lgs_query(lgs_workspace* ws, const char* filter_json, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    logoscope::QueryParams params;
    if (filter_json && *filter_json) {
      const json filter = json::parse(filter_json);
      for (const auto& [k, v] : filter.items()) params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    auto page = w.ws.kb().query(logoscope::parse_query_filter(params));
    return json{{"items", page.items}, {"total", page.total}, {"page", page.page}, {"page_size", page.page_size}};
  });
}

lgs_status lgs_stats(lgs_workspace* ws, const char* dimension, char** out_json) {
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    auto dim = logoscope::parse_stats_dimension(dimension ? dimension : "");
    json rows = json::array();
    for (const auto& r : w.ws.kb().stats(dim)) {
      json row = {{"key", r.key}, {"count", r.count}};
      if (!r.bucket.empty()) row["month"] = r.bucket;
      rows.push_back(row);
    }
    return json{{"dimension", logoscope::to_string(dim)}, {"rows", rows}};
  });
}

lgs_status lgs_api_request(lgs_workspace* ws, const char* method, const char* path, const char* query,
                           const char* body, int* http_status, char** out_json) {
  if (http_status) *http_status = 0;
  return guarded(ws, out_json, [&](lgs_workspace& w) {
    if (!method || !path) throw logoscope::Error(logoscope::ErrorCode::kInvalidArgument, "MissingRequest", "method and path are required");
    auto r = w.router.handle(method, path, logoscope::parse_query_string(query ? query : ""), body ? body : "");
    if (http_status) *http_status = r.status;
    return json::parse(r.body);
  });
}

lgs_status lgs_serve(lgs_workspace* ws, const char* host, int port, const char* static_dir) {
  return guarded(ws, nullptr, [&](lgs_workspace& w) {
    logoscope::ServeOptions o;
    if (host && *host) o.host = host;
    o.port = port;
    o.static_dir = opt_path(static_dir);
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);
    logoscope::HttpService service(w.ws, o);
    service.bind();
    std::thread waiter([&] {
      int sig = 0;
      sigwait(&signals, &sig);
      service.stop();
    });
    service.run();
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    return json{};
  });
}

}  // extern "C"
