// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "logoscope/logoscope.h"

namespace {

const char* c_or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

// `out` is read only after the call that fills it has returned.
int report(lgs_status status, char* const* slot, bool pretty = true) {
  char* out = slot ? *slot : nullptr;
  if (status != LGS_OK) {
    std::cerr << "logoscope: " << lgs_last_error() << "\n";
    return static_cast<int>(status);
  }
  if (out) {
    auto doc = nlohmann::json::parse(out, nullptr, false);
    std::cout << (pretty && !doc.is_discarded() ? doc.dump(2) : std::string(out)) << "\n";
    lgs_string_free(out);
  }
  return 0;
}

std::string today() {
  std::time_t t = std::time(nullptr);
  char buf[16];
  std::strftime(buf, sizeof buf, "%Y-%m-%d", std::localtime(&t));
  return buf;
}

struct Handle {
  lgs_workspace* ws = nullptr;
  ~Handle() { lgs_workspace_close(ws); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neologism detection and documentation for news corpora"};
  app.require_subcommand(1);
  std::string data_dir;
  app.add_option("--data-dir", data_dir, "Data directory")->envname("LOGOSCOPE_DATA");

  std::string date;
  std::string config;
  std::string model;
  std::string history;
  std::string mask;
  std::string file;
  std::string annotator;
  std::string corpus;
  std::string article;
  std::string out_path;
  std::string host = "127.0.0.1";
  std::string static_dir;
  int folds = 10;
  int port = 8080;
  int topic = -1;
  int top_n = 10;
  nlohmann::json topic_options = nlohmann::json::object();

  auto* init = app.add_subcommand("init", "Create a data directory");
  auto* fetch = app.add_subcommand("fetch", "Fetch the configured feeds into a dated batch");
  fetch->add_option("--date", date, "Batch date (YYYY-MM-DD)");
  fetch->add_option("--config", config, "Feed configuration file");
  auto* detect = app.add_subcommand("detect", "Extract unknown-word candidates from a batch");
  detect->add_option("--date", date, "Batch date")->required();
  auto* rank = app.add_subcommand("rank", "Rank a batch's candidates");
  rank->add_option("--date", date, "Batch date")->required();
  rank->add_option("--model", model, "Ranker model file");
  auto* train = app.add_subcommand("train", "Train the ranker from reviewed batches");
  train->add_option("--history", history, "Data directory holding reviewed batches");
  train->add_option("--mask", mask, "Feature groups, e.g. formal,lex,theme");
  train->add_option("--out", model, "Model output path");
  auto* eval = app.add_subcommand("eval", "Cross-validate the ranker");
  eval->add_option("--cv", folds, "Number of folds")->check(CLI::Range(2, 1000));
  eval->add_option("--history", history, "Data directory holding reviewed batches");
  eval->add_option("--mask", mask, "Feature groups");
  bool eval_json = false;
  eval->add_flag("--json", eval_json, "Print the full report as JSON");
  auto* export_cmd = app.add_subcommand("export-candidates", "Write the review CSV and context page");
  export_cmd->add_option("--date", date, "Batch date")->required();
  auto* import_cmd = app.add_subcommand("import-decisions", "Apply a reviewed decision CSV");
  import_cmd->add_option("--file", file, "Decision CSV")->required()->check(CLI::ExistingFile);
  import_cmd->add_option("--date", date, "Decision date (defaults to the file name or today)");
  import_cmd->add_option("--annotator", annotator, "Annotator name");
  auto* monitor = app.add_subcommand("monitor", "Record new occurrences of documented words");
  monitor->add_option("--date", date, "Batch date")->required();

  auto* topics = app.add_subcommand("topics", "Topic model");
  topics->require_subcommand(1);
  auto* topics_train = topics->add_subcommand("train", "Train the topic model");
  topics_train->add_option("--corpus", corpus, "Corpus directory of dated batches");
  std::size_t k = 0, iterations = 0;
  double alpha = 0, beta = 0;
  std::uint64_t seed = 0;
  auto* k_opt = topics_train->add_option("--k", k, "Number of topics");
  auto* it_opt = topics_train->add_option("--iterations", iterations, "Gibbs sweeps");
  auto* alpha_opt = topics_train->add_option("--alpha", alpha, "Document-topic prior");
  auto* beta_opt = topics_train->add_option("--beta", beta, "Topic-word prior");
  auto* seed_opt = topics_train->add_option("--seed", seed, "Random seed");
  auto* topics_show = topics->add_subcommand("show", "Print top words");
  topics_show->add_option("--topic", topic, "Topic index (all when omitted)");
  topics_show->add_option("--n", top_n, "Words per topic");
  auto* topics_infer = topics->add_subcommand("infer", "Infer topic proportions of a text file");
  topics_infer->add_option("--doc", file, "Text file, one paragraph per line")->required()->check(CLI::ExistingFile);

  auto* themes = app.add_subcommand("themes", "Theme register");
  themes->require_subcommand(1);
  auto* themes_match = themes->add_subcommand("match", "Match themes in a stored article");
  themes_match->add_option("--article", article, "Article id")->required();

  auto* kb = app.add_subcommand("kb", "Knowledge base");
  kb->require_subcommand(1);
  auto* kb_export = kb->add_subcommand("export", "Write kb-export.jsonl");
  kb_export->add_option("--out", out_path, "Output file");

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--static", static_dir, "Directory of UI assets");

  auto* daily = app.add_subcommand("run-daily", "fetch, detect, rank and export in one go");
  daily->add_option("--date", date, "Batch date");

  CLI11_PARSE(app, argc, argv);
  if (data_dir.empty()) data_dir = ".";
  char* out = nullptr;

  if (init->parsed()) return report(lgs_init(data_dir.c_str(), &out), &out);

  Handle h;
  if (lgs_workspace_open(data_dir.c_str(), &h.ws) != LGS_OK) {
    std::cerr << "logoscope: " << lgs_last_error() << "\n";
    return 1;
  }
  lgs_workspace* ws = h.ws;
  if (date.empty()) date = today();

  if (fetch->parsed()) return report(lgs_fetch(ws, date.c_str(), c_or_null(config), &out), &out);
  if (detect->parsed()) return report(lgs_detect(ws, date.c_str(), &out), &out);
  if (rank->parsed()) return report(lgs_rank(ws, date.c_str(), c_or_null(model), &out), &out);
  if (train->parsed()) return report(lgs_train(ws, c_or_null(history), c_or_null(mask), c_or_null(model), &out), &out);
  if (eval->parsed()) {
    lgs_status st = lgs_eval(ws, folds, c_or_null(history), c_or_null(mask), &out);
    if (st != LGS_OK || eval_json) return report(st, &out);
    auto doc = nlohmann::json::parse(out);
    lgs_string_free(out);
    std::cout << doc.at("table").get<std::string>();
    return 0;
  }
  if (export_cmd->parsed()) return report(lgs_export_candidates(ws, date.c_str(), &out), &out);
  if (import_cmd->parsed()) {
    bool explicit_date = import_cmd->count("--date") > 0;
    return report(lgs_import_decisions(ws, file.c_str(), explicit_date ? date.c_str() : nullptr,
                                       c_or_null(annotator), &out),
                  &out);
  }
  if (monitor->parsed()) return report(lgs_monitor(ws, date.c_str(), &out), &out);
  if (topics_train->parsed()) {
    if (*k_opt) topic_options["k"] = k;
    if (*it_opt) topic_options["iterations"] = iterations;
    if (*alpha_opt) topic_options["alpha"] = alpha;
    if (*beta_opt) topic_options["beta"] = beta;
    if (*seed_opt) topic_options["seed"] = seed;
    std::string options = topic_options.dump();
    return report(lgs_topics_train(ws, c_or_null(corpus), options.c_str(), &out), &out);
  }
  if (topics_show->parsed()) return report(lgs_topics_show(ws, topic, top_n, &out), &out);
  if (topics_infer->parsed()) {
    std::ifstream in(file);
    std::stringstream text;
    text << in.rdbuf();
    return report(lgs_topics_infer(ws, text.str().c_str(), &out), &out);
  }
  if (themes_match->parsed()) return report(lgs_themes_match(ws, article.c_str(), &out), &out);
  if (kb_export->parsed()) return report(lgs_kb_export(ws, c_or_null(out_path), &out), &out);
  if (serve->parsed()) {
    return report(lgs_serve(ws, host.c_str(), port, c_or_null(static_dir)), nullptr);
  }
  if (daily->parsed()) return report(lgs_run_daily(ws, date.c_str(), &out), &out);
  return 0;
}
