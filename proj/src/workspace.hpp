// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "candidate_extractor.hpp"
#include "corpus_ingest.hpp"
#include "feature_builder.hpp"
#include "knowledge_base.hpp"
#include "lexicon.hpp"
#include "ranker.hpp"
#include "tagger.hpp"
#include "theme_analyzer.hpp"
#include "topic_model.hpp"
#include "validation_workflow.hpp"

namespace logoscope {

namespace fs = std::filesystem;

struct TopicSettings {
  LdaConfig lda;
  std::size_t min_df = 5;
  double max_df_ratio = 0.5;
};

// logoscope.json. Relative resource paths are looked up in the data directory
// first, then in the bundled resources.
struct WorkspaceConfig {
  std::vector<std::string> lexicons{"lexicon/fr-forms.txt"};
  std::string feeds = "feeds.tsv";
  std::string suffix_table = "suffix-table.tsv";
  std::string affixes = "affixes.toml";
  std::string language_rules = "language-rules.tsv";
  std::string stopwords = "stopwords.txt";
  std::string themes = "themes";
  std::optional<std::string> tagger_command;
  std::optional<std::string> spell_command;
  std::string feature_mask = "formal,lex,theme";
  bool sentence_context = false;
  std::size_t infer_iterations = 100;
  std::size_t max_parallel_fetch = 4;
  std::size_t context_paragraphs = 3;
  std::map<std::string, std::string> editorial_styles;
  RankerHyper ranker;
  TopicSettings topics;
};

void to_json(nlohmann::json& j, const WorkspaceConfig& c);
void from_json(const nlohmann::json& j, WorkspaceConfig& c);

struct FetchSummary {
  Date date;
  std::size_t articles = 0;
  std::size_t stored = 0;
  std::size_t paragraphs = 0;
  std::size_t duplicates = 0;
  std::size_t empty_extractions = 0;
  std::vector<FeedFailure> failures;
};

struct DetectSummary {
  Date date;
  std::size_t articles = 0;
  std::size_t tokens = 0;
  std::size_t candidates = 0;
  std::size_t char_ngram_suspect = 0;
  std::size_t concat_suspect = 0;
  std::size_t spell_suspect = 0;
  std::string feature_mask;
  std::size_t feature_dimension = 0;
  std::uint64_t lexicon_version = 0;
};

struct RankedCandidate {
  std::size_t rank = 0;  // 1-based
  std::int64_t wid = 0;
  std::string surface;
  double score = 0.0;
  double probability = 0.0;
  std::size_t abs_freq = 0;
};

struct ExportSummary {
  Date date;
  std::size_t exported = 0;
  std::size_t skipped_decided = 0;
  bool ranked = false;
  fs::path csv;
  fs::path html;
};

struct ImportSummary {
  Date decision_date;
  std::size_t rows = 0;
  ApplyReport report;
  std::vector<RowIssue> parse_issues;
};

struct TrainSummary {
  std::size_t batches = 0;
  std::size_t examples = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::string mask;
  std::size_t dimension = 0;
  std::size_t restarts = 0;
  double final_loss = 0.0;
  fs::path model_path;
};

struct PendingCandidate {
  Date date;
  ExportItem item;
  FilterFlags flags;
  std::size_t abs_freq = 0;
  std::size_t doc_freq = 0;
  std::optional<std::size_t> rank;
  std::optional<double> probability;
};

// Outcome of a single decision submitted outside a CSV file.
enum class DecisionStatus { kApplied, kInvalid, kUnknown, kAlreadyDecided };

struct DecisionOutcome {
  DecisionStatus status = DecisionStatus::kApplied;
  std::string message;
  ApplyReport report;
};

// A data directory and every pipeline stage that reads or writes it.
// Instances are not thread-safe; the service serializes access.
class Workspace {
 public:
  // Creates the directory layout and a default logoscope.json/feeds.tsv when
  // missing. Returns the config file path.
  static fs::path init(const fs::path& dir);

  // Throws NotADataDirectory when `dir` does not exist.
  explicit Workspace(fs::path dir);
  ~Workspace();
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const fs::path& dir() const { return dir_; }
  const WorkspaceConfig& config() const { return config_; }
  fs::path resource(const std::string& relative) const;

  FetchSummary fetch(const Date& date, const std::optional<fs::path>& feeds = std::nullopt,
                     DocumentFetcher* fetcher = nullptr);
  DetectSummary detect(const Date& date);
  TrainSummary train(const std::optional<fs::path>& history = std::nullopt,
                     const std::optional<std::string>& mask = std::nullopt,
                     const std::optional<fs::path>& model_out = std::nullopt);
  CvReport evaluate(std::size_t folds, const std::optional<fs::path>& history = std::nullopt,
                    const std::optional<std::string>& mask = std::nullopt);
  std::vector<RankedCandidate> rank(const Date& date, const std::optional<fs::path>& model = std::nullopt);
  ExportSummary export_candidates(const Date& date);
  ImportSummary import_decisions(const fs::path& file, const std::optional<Date>& decision_date = std::nullopt,
                                 const std::optional<std::string>& annotator = std::nullopt);
  std::vector<std::pair<std::int64_t, Occurrence>> monitor(const Date& date);
  nlohmann::json run_daily(const Date& date, DocumentFetcher* fetcher = nullptr);

  TopicModel train_topics(const std::optional<fs::path>& corpus_dir = std::nullopt,
                          const std::optional<LdaConfig>& lda = std::nullopt,
                          const GibbsObserver& observer = {});
  const TopicModel& topic_model();
  bool has_topic_model() const;
  InferResult infer_topics(const std::string& text);

  ThemeAnalysis analyze(const std::string& article_id);
  std::optional<Article> find_article(const std::string& article_id) const;

  KnowledgeBase& kb();
  ExclusionList& lexicon();
  const ThemeRegister& themes();
  TagFn tagger();
  void kb_export(const std::optional<fs::path>& out = std::nullopt);

  std::optional<std::string> surface_of(std::int64_t wid);
  std::vector<PendingCandidate> pending(const std::optional<Date>& date = std::nullopt);
  DecisionOutcome decide(const CandidateRow& row, const std::optional<Date>& decision_date = std::nullopt,
                         const std::optional<std::string>& annotator = std::nullopt);

  fs::path corpus_dir() const { return dir_ / "corpus"; }
  fs::path candidates_path(const Date& d) const { return dir_ / "candidates" / (d.str() + ".jsonl"); }
  fs::path features_path(const Date& d) const { return dir_ / "features" / (d.str() + ".tsv"); }
  fs::path ranking_path(const Date& d) const { return dir_ / "ranking" / (d.str() + ".tsv"); }
  fs::path ranker_path() const { return dir_ / "models" / "ranker.json"; }
  fs::path topics_path() const { return dir_ / "models" / "topics.lda"; }
  fs::path registry_path() const { return dir_ / "candidates" / "registry.tsv"; }

 private:
  struct Lazy;

  std::vector<std::string> journals() const;
  std::vector<Candidate>& candidates_for(const Date& date);
  std::optional<Occurrence> document_first(std::int64_t wid, const std::string& word);
  std::vector<ContextSnippet> contexts_of(const Candidate& c, const CorpusBatch& batch) const;
  std::vector<std::pair<std::int64_t, std::string>> exported_rows(const Date& date) const;
  const CorpusBatch& batch(const Date& date);
  WidRegistry& registry();
  DecisionContext decision_context();

  fs::path dir_;
  WorkspaceConfig config_;
  BatchStore store_;
  std::unique_ptr<Lazy> lazy_;
};

std::vector<RankedCandidate> read_ranking(const fs::path& path);
void write_ranking(const fs::path& path, const std::vector<RankedCandidate>& rows);

void to_json(nlohmann::json& j, const FetchSummary& s);
void to_json(nlohmann::json& j, const DetectSummary& s);
void to_json(nlohmann::json& j, const RankedCandidate& r);
void to_json(nlohmann::json& j, const ExportSummary& s);
void to_json(nlohmann::json& j, const RowIssue& i);
void to_json(nlohmann::json& j, const ApplyReport& r);
void to_json(nlohmann::json& j, const ImportSummary& s);
void to_json(nlohmann::json& j, const TrainSummary& s);
void to_json(nlohmann::json& j, const PendingCandidate& p);

}  // namespace logoscope
