// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "workspace.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>

#include <spdlog/spdlog.h>

#include "error.hpp"
#include "file_util.hpp"
#include "segmenter.hpp"
#include "utf8.hpp"

#ifndef LOGOSCOPE_DEFAULT_RESOURCES
#define LOGOSCOPE_DEFAULT_RESOURCES "data"
#endif

namespace logoscope {

namespace {

constexpr const char* kFeedsTemplate =
    "# journal_name\tfeed_url\tfetch_enabled\n"
    "# Le Monde\thttps://www.lemonde.fr/rss/une.xml\ttrue\n";

std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::vector<Date> dated_files(const fs::path& dir, std::string_view extension) {
  std::vector<Date> dates;
  if (!fs::is_directory(dir)) return dates;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() != extension) continue;
    if (auto d = Date::parse(e.path().stem().string())) dates.push_back(*d);
  }
  std::sort(dates.begin(), dates.end());
  return dates;
}

StringSet load_word_list(const fs::path& path) {
  StringSet words;
  if (!fs::exists(path)) return words;
  for (auto& line : split_lines(read_file(path))) {
    auto w = trim(line);
    if (w.empty() || w.front() == '#') continue;
    words.insert(utf8::to_lower(w));
  }
  return words;
}

// Feature table columns that belong to a mask.
bool column_in_mask(const std::string& column, const FeatureMask& mask) {
  if (column.starts_with("formal.")) return mask.formal;
  if (column.starts_with("lex.")) return mask.lex;
  if (column.starts_with("theme.")) return mask.theme;
  return false;
}

}  // namespace

void to_json(nlohmann::json& j, const WorkspaceConfig& c) {
  j = nlohmann::json{
      {"lexicons", c.lexicons},
      {"feeds", c.feeds},
      {"suffix_table", c.suffix_table},
      {"affixes", c.affixes},
      {"language_rules", c.language_rules},
      {"stopwords", c.stopwords},
      {"themes", c.themes},
      {"tagger_command", c.tagger_command ? nlohmann::json(*c.tagger_command) : nlohmann::json(nullptr)},
      {"spell_command", c.spell_command ? nlohmann::json(*c.spell_command) : nlohmann::json(nullptr)},
      {"feature_mask", c.feature_mask},
      {"sentence_context", c.sentence_context},
      {"infer_iterations", c.infer_iterations},
      {"max_parallel_fetch", c.max_parallel_fetch},
      {"context_paragraphs", c.context_paragraphs},
      {"editorial_styles", c.editorial_styles},
      {"ranker",
       {{"cost", c.ranker.cost},
        {"learning_rate", c.ranker.learning_rate},
        {"epochs", c.ranker.epochs},
        {"seed", c.ranker.seed},
        {"loss", c.ranker.loss == Loss::kHinge ? "hinge" : "logistic"}}},
      {"topics",
       {{"k", c.topics.lda.k},
        {"alpha", c.topics.lda.alpha},
        {"beta", c.topics.lda.beta},
        {"iterations", c.topics.lda.iterations},
        {"seed", c.topics.lda.seed},
        {"min_df", c.topics.min_df},
        {"max_df_ratio", c.topics.max_df_ratio}}}};
}

void from_json(const nlohmann::json& j, WorkspaceConfig& c) {
  c = WorkspaceConfig{};
  auto opt_string = [&](const char* key, std::optional<std::string>& out) {
    if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<std::string>();
  };
  if (j.contains("lexicons")) c.lexicons = j.at("lexicons").get<std::vector<std::string>>();
  c.feeds = j.value("feeds", c.feeds);
  c.suffix_table = j.value("suffix_table", c.suffix_table);
  c.affixes = j.value("affixes", c.affixes);
  c.language_rules = j.value("language_rules", c.language_rules);
  c.stopwords = j.value("stopwords", c.stopwords);
  c.themes = j.value("themes", c.themes);
  opt_string("tagger_command", c.tagger_command);
  opt_string("spell_command", c.spell_command);
  c.feature_mask = j.value("feature_mask", c.feature_mask);
  c.sentence_context = j.value("sentence_context", c.sentence_context);
  c.infer_iterations = j.value("infer_iterations", c.infer_iterations);
  c.max_parallel_fetch = j.value("max_parallel_fetch", c.max_parallel_fetch);
  c.context_paragraphs = j.value("context_paragraphs", c.context_paragraphs);
  if (j.contains("editorial_styles")) {
    c.editorial_styles = j.at("editorial_styles").get<std::map<std::string, std::string>>();
  }
  if (j.contains("ranker")) {
    const auto& r = j.at("ranker");
    c.ranker.cost = r.value("cost", c.ranker.cost);
    c.ranker.learning_rate = r.value("learning_rate", c.ranker.learning_rate);
    c.ranker.epochs = r.value("epochs", c.ranker.epochs);
    c.ranker.seed = r.value("seed", c.ranker.seed);
    std::string loss = r.value("loss", std::string("logistic"));
    if (loss != "logistic" && loss != "hinge") throw Error(ErrorCode::kParse, "BadConfig", "ranker.loss: " + loss);
    c.ranker.loss = loss == "hinge" ? Loss::kHinge : Loss::kLogistic;
  }
  if (j.contains("topics")) {
    const auto& t = j.at("topics");
    c.topics.lda.k = t.value("k", c.topics.lda.k);
    c.topics.lda.alpha = t.value("alpha", c.topics.lda.alpha);
    c.topics.lda.beta = t.value("beta", c.topics.lda.beta);
    c.topics.lda.iterations = t.value("iterations", c.topics.lda.iterations);
    c.topics.lda.seed = t.value("seed", c.topics.lda.seed);
    c.topics.min_df = t.value("min_df", c.topics.min_df);
    c.topics.max_df_ratio = t.value("max_df_ratio", c.topics.max_df_ratio);
  }
  FeatureMask::parse(c.feature_mask);
}

struct Workspace::Lazy {
  std::optional<ExclusionList> lexicon;
  std::optional<NgramTable> ngrams;
  std::optional<ContainmentIndex> containment;
  std::unique_ptr<SpellProvider> spell;
  std::optional<FallbackTagger> fallback;
  std::unique_ptr<TaggerAdapter> adapter;
  std::mutex tag_mutex;
  std::optional<AffixInventory> affixes;
  std::optional<LanguageRules> languages;
  std::optional<ThemeRegister> themes;
  std::optional<TopicModel> topics;
  std::optional<WidRegistry> registry;
  std::unique_ptr<KnowledgeBase> kb;
  std::map<Date, CorpusBatch> batches;
  std::map<Date, std::vector<Candidate>> candidates;
};

fs::path Workspace::init(const fs::path& dir) {
  for (const char* sub : {"corpus", "candidates", "features", "ranking", "decisions", "models", "themes"}) {
    fs::create_directories(dir / sub);
  }
  fs::path config = dir / "logoscope.json";
  if (!fs::exists(config)) write_file_atomic(config, nlohmann::json(WorkspaceConfig{}).dump(2) + "\n");
  if (!fs::exists(dir / "feeds.tsv")) write_file_atomic(dir / "feeds.tsv", kFeedsTemplate);
  return config;
}

Workspace::Workspace(fs::path dir)
    : dir_(std::move(dir)), store_(dir_ / "corpus"), lazy_(std::make_unique<Lazy>()) {
  if (!fs::is_directory(dir_)) throw Error(ErrorCode::kNotFound, "NotADataDirectory", dir_.string());
  fs::path config = dir_ / "logoscope.json";
  if (fs::exists(config)) {
    try {
      config_ = nlohmann::json::parse(read_file(config)).get<WorkspaceConfig>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "BadConfig", config.string() + ": " + e.what());
    }
  }
}

Workspace::~Workspace() = default;

fs::path Workspace::resource(const std::string& relative) const {
  fs::path p(relative);
  if (p.is_absolute()) return p;
  if (fs::exists(dir_ / p)) return dir_ / p;
  return fs::path(LOGOSCOPE_DEFAULT_RESOURCES) / p;
}

ExclusionList& Workspace::lexicon() {
  if (!lazy_->lexicon) {
    std::vector<fs::path> paths;
    for (const auto& l : config_.lexicons) paths.push_back(resource(l));
    auto list = ExclusionList::load(paths);
    fs::path audit = dir_ / "lexicon-audit.tsv";
    list.replay(read_audit_log(audit));
    list.attach_audit_log(audit);
    lazy_->lexicon = std::move(list);
  }
  return *lazy_->lexicon;
}

TagFn Workspace::tagger() {
  if (!lazy_->fallback) {
    lazy_->fallback.emplace(SuffixTable::load(resource(config_.suffix_table)));
    if (config_.tagger_command) lazy_->adapter = std::make_unique<ProcessTagger>(*config_.tagger_command);
  }
  Lazy* lazy = lazy_.get();
  if (!lazy->adapter) {
    return [lazy](std::string_view text) { return lazy->fallback->tag_all(tokenize(text)); };
  }
  return [lazy](std::string_view text) {
    std::lock_guard lock(lazy->tag_mutex);
    auto result = tag_text(text, lazy->adapter.get(), *lazy->fallback);
    if (result.fallback_used) spdlog::warn("tagger adapter failed, using fallback: {}", result.adapter_error);
    return std::move(result.tokens);
  };
}

const ThemeRegister& Workspace::themes() {
  if (!lazy_->themes) {
    fs::path dir = resource(config_.themes);
    bool has_files = false;
    if (fs::is_directory(dir)) {
      for (const auto& e : fs::directory_iterator(dir)) has_files = has_files || e.path().extension() == ".txt";
    }
    if (!has_files) dir = fs::path(LOGOSCOPE_DEFAULT_RESOURCES) / "themes";
    lazy_->themes = fs::is_directory(dir) ? ThemeRegister::load(dir) : ThemeRegister{};
  }
  return *lazy_->themes;
}

bool Workspace::has_topic_model() const { return lazy_->topics.has_value() || fs::exists(topics_path()); }

const TopicModel& Workspace::topic_model() {
  if (!lazy_->topics) lazy_->topics = TopicModel::load(topics_path());
  return *lazy_->topics;
}

KnowledgeBase& Workspace::kb() {
  if (!lazy_->kb) lazy_->kb = std::make_unique<KnowledgeBase>((dir_ / "kb.sqlite").string());
  return *lazy_->kb;
}

WidRegistry& Workspace::registry() {
  if (!lazy_->registry) lazy_->registry = WidRegistry::load(registry_path());
  return *lazy_->registry;
}

const CorpusBatch& Workspace::batch(const Date& date) {
  auto it = lazy_->batches.find(date);
  if (it == lazy_->batches.end()) it = lazy_->batches.emplace(date, store_.load(date)).first;
  return it->second;
}

std::vector<Candidate>& Workspace::candidates_for(const Date& date) {
  auto it = lazy_->candidates.find(date);
  if (it == lazy_->candidates.end()) {
    fs::path p = candidates_path(date);
    if (!fs::exists(p)) throw Error(ErrorCode::kState, "NotDetected", "no candidates for " + date.str());
    it = lazy_->candidates.emplace(date, read_candidates(p)).first;
  }
  return it->second;
}

std::vector<std::string> Workspace::journals() const {
  std::set<std::string> names;
  fs::path feeds = resource(config_.feeds);
  if (fs::exists(feeds)) {
    for (const auto& f : load_feed_configs(feeds)) names.insert(f.journal_name);
  }
  return {names.begin(), names.end()};
}

std::optional<Article> Workspace::find_article(const std::string& article_id) const {
  return store_.find_article(article_id);
}

FetchSummary Workspace::fetch(const Date& date, const std::optional<fs::path>& feeds, DocumentFetcher* fetcher) {
  auto configs = load_feed_configs(feeds ? *feeds : resource(config_.feeds));
  DefaultFetcher default_fetcher;
  FetchResult r =
      fetch_feeds(configs, date, fetcher ? *fetcher : default_fetcher, std::max<std::size_t>(1, config_.max_parallel_fetch));
  FetchSummary s;
  s.date = date;
  s.articles = r.batch.articles.size();
  s.duplicates = r.duplicates;
  s.empty_extractions = r.empty_extractions;
  s.failures = r.failures;
  auto counts = store_.store_batch(r.batch);
  s.stored = counts.articles;
  s.paragraphs = counts.paragraphs;
  lazy_->batches.erase(date);
  return s;
}

DetectSummary Workspace::detect(const Date& date) {
  const CorpusBatch& b = batch(date);
  auto& lex = lexicon();
  if (!lazy_->ngrams) lazy_->ngrams = NgramTable::from_forms(lex.forms());
  if (!lazy_->spell) {
    if (config_.spell_command) {
      lazy_->spell = std::make_unique<ProcessSpellProvider>(*config_.spell_command);
    } else {
      lazy_->spell = std::make_unique<LexiconSpellProvider>(lex);
    }
  }
  CandidateFilters filters{&*lazy_->ngrams, &lex, lazy_->spell.get()};
  auto candidates = extract_unknown(b, lex, filters);

  auto& reg = registry();
  for (auto& c : candidates) c.candidate_id = reg.assign(c.surface, date);
  reg.save(registry_path());
  write_candidates(candidates_path(date), candidates);

  FeatureMask mask = FeatureMask::parse(config_.feature_mask);
  if (mask.theme && !has_topic_model()) {
    spdlog::warn("no topic model at {}; thematic features skipped", topics_path().string());
    mask.theme = false;
  }
  if (!mask.formal && !mask.lex && !mask.theme) mask.formal = true;
  if (!lazy_->affixes) lazy_->affixes = AffixInventory::load(resource(config_.affixes));
  if (!lazy_->languages) lazy_->languages = LanguageRules::load(resource(config_.language_rules));
  if (mask.lex && !lazy_->containment) lazy_->containment = ContainmentIndex::build(lex.forms());
  FeatureResources res;
  res.affixes = &*lazy_->affixes;
  res.languages = &*lazy_->languages;
  res.containment = lazy_->containment ? &*lazy_->containment : nullptr;
  res.topics = mask.theme ? &topic_model() : nullptr;
  res.tagger = tagger();
  res.journals = journals();
  res.sentence_context = config_.sentence_context;
  res.infer_iterations = config_.infer_iterations;
  FeatureBuilder builder(res, mask);
  auto rows = builder.build_all(candidates, b);
  write_feature_table(features_path(date), builder.columns(), rows);

  store_.finalize(date);
  lazy_->candidates[date] = candidates;

  DetectSummary s;
  s.date = date;
  s.articles = b.articles.size();
  s.tokens = count_tokens(b);
  s.candidates = candidates.size();
  for (const auto& c : candidates) {
    s.char_ngram_suspect += c.flags.char_ngram_suspect;
    s.concat_suspect += c.flags.concat_suspect;
    s.spell_suspect += c.flags.spell_suspect;
  }
  s.feature_mask = mask.str();
  s.feature_dimension = builder.dimension();
  s.lexicon_version = lex.version();
  return s;
}

namespace {

struct HistoryData {
  std::vector<std::string> columns;
  Dataset dataset;
  std::size_t batches = 0;
};

// Feature tables of every reviewed batch, labeled by the recorded decisions:
// accepted words are positive, every other unknown form of the batch negative.
HistoryData load_history(const fs::path& history, const FeatureMask& mask) {
  std::map<std::int64_t, bool> labels;
  fs::path db = history / "kb.sqlite";
  if (fs::exists(db)) {
    KnowledgeBase kb(db.string());
    for (const auto& d : kb.decisions()) labels[d.wid] = d.valid;
  }
  HistoryData out;
  for (const Date& date : dated_files(history / "features", ".tsv")) {
    FeatureTable table = read_feature_table(history / "features" / (date.str() + ".tsv"));
    bool reviewed = std::any_of(table.rows.begin(), table.rows.end(),
                                [&](const FeatureRow& r) { return labels.contains(r.wid); });
    if (!reviewed) continue;
    std::vector<std::size_t> keep;
    std::vector<std::string> columns;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (column_in_mask(table.columns[i], mask)) {
        keep.push_back(i);
        columns.push_back(table.columns[i]);
      }
    }
    if (out.batches == 0) {
      out.columns = columns;
    } else if (columns != out.columns) {
      throw Error(ErrorCode::kInvariant, "DimensionMismatch", "feature columns differ in " + date.str());
    }
    for (const auto& row : table.rows) {
      LabeledExample ex;
      for (auto i : keep) ex.x.push_back(row.values[i]);
      auto it = labels.find(row.wid);
      ex.positive = it != labels.end() && it->second;
      out.dataset.push_back(std::move(ex));
    }
    ++out.batches;
  }
  if (out.batches == 0) throw Error(ErrorCode::kState, "NoHistory", "no reviewed feature tables in " + history.string());
  if (out.columns.empty()) {
    throw Error(ErrorCode::kState, "ModelMissing", "feature tables lack the columns of mask " + mask.str());
  }
  return out;
}

}  // namespace

TrainSummary Workspace::train(const std::optional<fs::path>& history, const std::optional<std::string>& mask_text,
                              const std::optional<fs::path>& model_out) {
  FeatureMask mask = FeatureMask::parse(mask_text.value_or(config_.feature_mask));
  HistoryData h = load_history(history.value_or(dir_), mask);
  RankerModel model = train_balanced(h.dataset, config_.ranker);
  model.columns = h.columns;
  // Batches detected without a topic model carry no theme columns.
  auto has_block = [&](const char* prefix) {
    return std::any_of(h.columns.begin(), h.columns.end(), [&](const std::string& c) { return c.starts_with(prefix); });
  };
  mask.formal = mask.formal && has_block("formal.");
  mask.lex = mask.lex && has_block("lex.");
  mask.theme = mask.theme && has_block("theme.");
  model.mask = mask;
  fs::path out = model_out.value_or(ranker_path());
  fs::create_directories(out.parent_path());
  model.save(out);

  TrainSummary s;
  s.batches = h.batches;
  s.examples = model.meta.examples;
  s.positives = model.meta.positives;
  s.negatives = model.meta.negatives;
  s.mask = mask.str();
  s.dimension = model.dimension();
  s.restarts = model.meta.restarts;
  s.final_loss = model.meta.loss_history.empty() ? 0.0 : model.meta.loss_history.back();
  s.model_path = out;
  return s;
}

CvReport Workspace::evaluate(std::size_t folds, const std::optional<fs::path>& history,
                             const std::optional<std::string>& mask_text) {
  FeatureMask mask = FeatureMask::parse(mask_text.value_or(config_.feature_mask));
  HistoryData h = load_history(history.value_or(dir_), mask);
  return cross_validate(h.dataset, folds, config_.ranker);
}

std::vector<RankedCandidate> Workspace::rank(const Date& date, const std::optional<fs::path>& model_path) {
  RankerModel model = RankerModel::load(model_path.value_or(ranker_path()));
  FeatureTable table = read_feature_table(features_path(date));
  std::vector<std::optional<std::size_t>> index;
  for (const auto& col : model.columns) {
    auto it = std::find(table.columns.begin(), table.columns.end(), col);
    if (it == table.columns.end() && !col.starts_with("theme.journal.")) {
      throw Error(ErrorCode::kInvariant, "DimensionMismatch", "feature table lacks column " + col);
    }
    index.push_back(it == table.columns.end() ? std::nullopt
                                              : std::optional<std::size_t>(it - table.columns.begin()));
  }
  std::map<std::int64_t, std::size_t> freq;
  for (const auto& c : candidates_for(date)) freq[c.candidate_id] = c.abs_freq;

  std::vector<RankInput> inputs;
  for (const auto& row : table.rows) {
    RankInput in;
    in.surface = row.surface;
    in.abs_freq = freq.contains(row.wid) ? freq[row.wid] : 0;
    for (const auto& i : index) in.x.push_back(i ? row.values[*i] : 0.0);
    inputs.push_back(std::move(in));
  }
  std::vector<RankedCandidate> out;
  for (const auto& item : logoscope::rank(model, inputs)) {
    const auto& row = table.rows[item.index];
    out.push_back({out.size() + 1, row.wid, row.surface, item.score, item.probability, inputs[item.index].abs_freq});
  }
  write_ranking(ranking_path(date), out);
  return out;
}

std::vector<ContextSnippet> Workspace::contexts_of(const Candidate& c, const CorpusBatch& b) const {
  std::map<std::pair<std::string, std::size_t>, std::vector<CharSpan>> marks;
  std::vector<std::pair<std::string, std::size_t>> order;
  for (const auto& o : c.occurrences) {
    auto key = std::make_pair(o.article_id, o.paragraph_index);
    auto [it, fresh] = marks.try_emplace(key);
    if (fresh) order.push_back(key);
    it->second.push_back(o.span);
  }
  std::vector<ContextSnippet> out;
  for (const auto& key : order) {
    if (out.size() >= config_.context_paragraphs) break;
    auto a = std::find_if(b.articles.begin(), b.articles.end(),
                          [&](const Article& x) { return x.article_id == key.first; });
    if (a == b.articles.end() || key.second >= a->paragraphs.size()) continue;
    auto spans = marks[key];
    std::sort(spans.begin(), spans.end());
    out.push_back({a->article_id, a->journal, key.second, a->paragraphs[key.second], spans});
  }
  return out;
}

ExportSummary Workspace::export_candidates(const Date& date) {
  auto& candidates = candidates_for(date);
  const CorpusBatch& b = batch(date);
  std::vector<const Candidate*> ordered;
  ExportSummary s;
  s.date = date;
  std::map<std::int64_t, double> scores;
  if (fs::exists(ranking_path(date))) {
    s.ranked = true;
    std::map<std::int64_t, const Candidate*> by_wid;
    for (const auto& c : candidates) by_wid[c.candidate_id] = &c;
    for (const auto& r : read_ranking(ranking_path(date))) {
      if (auto it = by_wid.find(r.wid); it != by_wid.end()) ordered.push_back(it->second);
      scores[r.wid] = r.probability;
    }
  } else {
    for (const auto& c : candidates) ordered.push_back(&c);
    std::stable_sort(ordered.begin(), ordered.end(), [](const Candidate* a, const Candidate* b) {
      if (a->abs_freq != b->abs_freq) return a->abs_freq > b->abs_freq;
      return a->surface < b->surface;
    });
  }
  auto& lex = lexicon();
  auto& base = kb();
  std::vector<ExportItem> items;
  for (const Candidate* c : ordered) {
    if (base.decision(c->candidate_id) || lex.contains(c->surface)) {
      ++s.skipped_decided;
      continue;
    }
    ExportItem item{c->candidate_id, c->surface, scores.contains(c->candidate_id) ? scores[c->candidate_id] : 0.0,
                    contexts_of(*c, b)};
    items.push_back(std::move(item));
  }
  logoscope::export_candidates(dir_ / "candidates", date, items);
  s.exported = items.size();
  s.csv = dir_ / "candidates" / (date.str() + ".csv");
  s.html = dir_ / "candidates" / (date.str() + ".html");
  return s;
}

std::optional<Occurrence> Workspace::document_first(std::int64_t wid, const std::string& word) {
  std::vector<Date> dates;
  if (auto first = registry().first_date(wid)) dates.push_back(*first);
  for (const auto& d : dated_files(dir_ / "candidates", ".jsonl")) {
    if (std::find(dates.begin(), dates.end(), d) == dates.end()) dates.push_back(d);
  }
  MonitorContext ctx{&themes(), tagger(), config_.editorial_styles};
  for (const auto& d : dates) {
    if (!fs::exists(candidates_path(d)) || !store_.exists(d)) continue;
    for (const auto& c : candidates_for(d)) {
      if ((c.candidate_id != wid && c.surface != word) || c.occurrences.empty()) continue;
      const auto& o = c.occurrences.front();
      const CorpusBatch& b = batch(d);
      auto a = std::find_if(b.articles.begin(), b.articles.end(),
                            [&](const Article& x) { return x.article_id == o.article_id; });
      if (a == b.articles.end()) continue;
      auto top = analyze_article(*ctx.themes, *a, ctx.tag).top3;
      return document_occurrence(*a, o.paragraph_index, o.span, top, ctx);
    }
  }
  return std::nullopt;
}

DecisionContext Workspace::decision_context() {
  DecisionContext ctx;
  ctx.surface_of = [this](std::int64_t wid) -> std::optional<std::string> {
    const std::string* s = registry().surface_of(wid);
    return s ? std::optional<std::string>(*s) : std::nullopt;
  };
  ctx.document = [this](std::int64_t wid, const std::string& word) { return document_first(wid, word); };
  return ctx;
}

ImportSummary Workspace::import_decisions(const fs::path& file, const std::optional<Date>& decision_date,
                                          const std::optional<std::string>& annotator) {
  Date when = decision_date.value_or(Date::parse(file.stem().string()).value_or(Date::today()));
  ImportResult parsed = logoscope::import_decisions(file, when, annotator);
  ImportSummary s;
  s.decision_date = when;
  s.rows = parsed.decisions.size() + parsed.issues.size();
  s.parse_issues = parsed.issues;
  s.report = apply_decisions(parsed.decisions, kb(), lexicon(), decision_context());
  for (const auto& i : s.parse_issues) spdlog::warn("line {}: {}: {}", i.line, i.kind, i.message);
  for (const auto& i : s.report.issues) spdlog::warn("wid {}: {}: {}", i.wid, i.kind, i.message);
  return s;
}

std::vector<std::pair<std::int64_t, std::string>> Workspace::exported_rows(const Date& date) const {
  std::vector<std::pair<std::int64_t, std::string>> rows;
  fs::path csv = dir_ / "candidates" / (date.str() + ".csv");
  if (!fs::exists(csv)) return rows;
  auto lines = split_lines(read_file(csv));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split(lines[i], ',');
    if (fields.size() < 2) continue;
    if (auto wid = parse_int(fields[0])) rows.emplace_back(*wid, std::string(fields[1]));
  }
  return rows;
}

std::vector<PendingCandidate> Workspace::pending(const std::optional<Date>& date) {
  std::vector<Date> dates;
  if (date) {
    dates.push_back(*date);
  } else {
    for (const auto& d : dated_files(dir_ / "candidates", ".csv")) dates.push_back(d);
  }
  std::vector<PendingCandidate> out;
  auto& base = kb();
  for (const auto& d : dates) {
    auto rows = exported_rows(d);
    if (rows.empty()) continue;
    std::map<std::int64_t, RankedCandidate> ranking;
    if (fs::exists(ranking_path(d))) {
      for (auto& r : read_ranking(ranking_path(d))) ranking[r.wid] = r;
    }
    std::map<std::int64_t, const Candidate*> by_wid;
    for (const auto& c : candidates_for(d)) by_wid[c.candidate_id] = &c;
    const CorpusBatch& b = batch(d);
    for (const auto& [wid, word] : rows) {
      if (base.decision(wid)) continue;
      PendingCandidate p;
      p.date = d;
      p.item.wid = wid;
      p.item.word = word;
      if (auto it = by_wid.find(wid); it != by_wid.end()) {
        p.flags = it->second->flags;
        p.abs_freq = it->second->abs_freq;
        p.doc_freq = it->second->doc_freq;
        p.item.contexts = contexts_of(*it->second, b);
      }
      if (auto it = ranking.find(wid); it != ranking.end()) {
        p.rank = it->second.rank;
        p.probability = it->second.probability;
        p.item.score = it->second.probability;
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::optional<std::string> Workspace::surface_of(std::int64_t wid) {
  const std::string* s = registry().surface_of(wid);
  return s ? std::optional<std::string>(*s) : std::nullopt;
}

DecisionOutcome Workspace::decide(const CandidateRow& row, const std::optional<Date>& decision_date,
                                  const std::optional<std::string>& annotator) {
  DecisionOutcome out;
  if (auto why = row_violation(row)) {
    out.status = DecisionStatus::kInvalid;
    out.message = *why;
    return out;
  }
  if (kb().decision(row.wid)) {
    out.status = DecisionStatus::kAlreadyDecided;
    out.message = "wid " + std::to_string(row.wid) + " already decided";
    return out;
  }
  const std::string* surface = registry().surface_of(row.wid);
  if (!surface) {
    out.status = DecisionStatus::kUnknown;
    out.message = "unknown wid " + std::to_string(row.wid);
    return out;
  }
  if (*surface != row.word) {
    out.status = DecisionStatus::kInvalid;
    out.message = "wid " + std::to_string(row.wid) + " belongs to '" + *surface + "'";
    return out;
  }
  Decision d{row, decision_date.value_or(Date::today()), annotator};
  out.report = apply_decisions({d}, kb(), lexicon(), decision_context());
  if (!out.report.issues.empty()) {
    out.status = DecisionStatus::kInvalid;
    out.message = out.report.issues.front().kind + ": " + out.report.issues.front().message;
  }
  return out;
}

std::vector<std::pair<std::int64_t, Occurrence>> Workspace::monitor(const Date& date) {
  MonitorContext ctx{&themes(), tagger(), config_.editorial_styles};
  return kb().monitor(batch(date), ctx);
}

nlohmann::json Workspace::run_daily(const Date& date, DocumentFetcher* fetcher) {
  nlohmann::json out;
  out["fetch"] = fetch(date, std::nullopt, fetcher);
  out["detect"] = detect(date);
  if (fs::exists(ranker_path())) {
    out["rank"] = {{"ranked", rank(date).size()}};
  } else {
    spdlog::warn("no ranker model at {}; exporting unranked candidates", ranker_path().string());
    out["rank"] = nullptr;
  }
  out["export"] = export_candidates(date);
  return out;
}

TopicModel Workspace::train_topics(const std::optional<fs::path>& corpus, const std::optional<LdaConfig>& lda,
                                   const GibbsObserver& observer) {
  BatchStore source(corpus.value_or(corpus_dir()));
  TagFn tag = tagger();
  std::vector<std::vector<std::string>> docs;
  for (const auto& d : source.dates()) {
    for (const auto& a : source.load(d).articles) {
      std::vector<std::string> doc;
      for (const auto& p : a.paragraphs) {
        for (auto& l : bag_of_lemmas(tag(p))) doc.push_back(std::move(l));
      }
      docs.push_back(std::move(doc));
    }
  }
  VocabularyOptions vo;
  vo.min_df = config_.topics.min_df;
  vo.max_df_ratio = config_.topics.max_df_ratio;
  vo.stopwords = load_word_list(resource(config_.stopwords));
  Vocabulary vocab = build_vocabulary(docs, vo);
  TopicModel model = train_lda(docs, vocab, lda.value_or(config_.topics.lda), observer);
  fs::create_directories(topics_path().parent_path());
  model.save(topics_path());
  lazy_->topics = model;
  return model;
}

InferResult Workspace::infer_topics(const std::string& text) {
  const TopicModel& model = topic_model();
  FeatureResources res;
  res.topics = &model;
  res.tagger = tagger();
  res.infer_iterations = config_.infer_iterations;
  FeatureBuilder builder(res, FeatureMask::parse("theme"));
  std::vector<std::string_view> paragraphs;
  for (auto p : split(text, '\n')) {
    if (!trim(p).empty()) paragraphs.push_back(p);
  }
  return builder.infer_text(paragraphs);
}

ThemeAnalysis Workspace::analyze(const std::string& article_id) {
  auto a = find_article(article_id);
  if (!a) throw Error(ErrorCode::kNotFound, "UnknownArticle", article_id);
  return analyze_article(themes(), *a, tagger());
}

void Workspace::kb_export(const std::optional<fs::path>& out) {
  kb().export_jsonl(out.value_or(dir_ / "kb-export.jsonl"));
}

std::vector<RankedCandidate> read_ranking(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::kNotFound, "NotRanked", path.string());
  std::vector<RankedCandidate> rows;
  auto lines = split_lines(read_file(path));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    auto f = split(lines[i], '\t');
    if (f.size() != 6) throw Error(ErrorCode::kParse, "BadRanking", path.string() + ":" + std::to_string(i + 1));
    auto rank = parse_int(f[0]);
    auto wid = parse_int(f[1]);
    auto score = parse_double(f[3]);
    auto prob = parse_double(f[4]);
    auto freq = parse_int(f[5]);
    if (!rank || !wid || !score || !prob || !freq) {
      throw Error(ErrorCode::kParse, "BadRanking", path.string() + ":" + std::to_string(i + 1));
    }
    rows.push_back({static_cast<std::size_t>(*rank), *wid, std::string(f[2]), *score, *prob,
                    static_cast<std::size_t>(*freq)});
  }
  return rows;
}

void write_ranking(const fs::path& path, const std::vector<RankedCandidate>& rows) {
  std::string out = "rank\twid\tsurface\tscore\tprobability\tabs_freq\n";
  for (const auto& r : rows) {
    out += std::to_string(r.rank) + '\t' + std::to_string(r.wid) + '\t' + r.surface + '\t' + format_double(r.score) +
           '\t' + format_double(r.probability) + '\t' + std::to_string(r.abs_freq) + '\n';
  }
  fs::create_directories(path.parent_path());
  write_file_atomic(path, out);
}

void to_json(nlohmann::json& j, const FetchSummary& s) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : s.failures) {
    failures.push_back({{"journal", f.journal}, {"feed_url", f.feed_url}, {"kind", f.kind}, {"message", f.message}});
  }
  j = {{"date", s.date.str()},         {"articles", s.articles},
       {"stored", s.stored},           {"paragraphs", s.paragraphs},
       {"duplicates", s.duplicates},   {"empty_extractions", s.empty_extractions},
       {"failures", failures}};
}

void to_json(nlohmann::json& j, const DetectSummary& s) {
  j = {{"date", s.date.str()},
       {"articles", s.articles},
       {"tokens", s.tokens},
       {"candidates", s.candidates},
       {"char_ngram_suspect", s.char_ngram_suspect},
       {"concat_suspect", s.concat_suspect},
       {"spell_suspect", s.spell_suspect},
       {"feature_mask", s.feature_mask},
       {"feature_dimension", s.feature_dimension},
       {"lexicon_version", s.lexicon_version}};
}

void to_json(nlohmann::json& j, const RankedCandidate& r) {
  j = {{"rank", r.rank},         {"wid", r.wid},
       {"word", r.surface},      {"score", r.score},
       {"probability", r.probability}, {"abs_freq", r.abs_freq}};
}

void to_json(nlohmann::json& j, const ExportSummary& s) {
  j = {{"date", s.date.str()},
       {"exported", s.exported},
       {"skipped_decided", s.skipped_decided},
       {"ranked", s.ranked},
       {"csv", s.csv.string()},
       {"html", s.html.string()}};
}

void to_json(nlohmann::json& j, const RowIssue& i) {
  j = {{"line", i.line}, {"wid", i.wid}, {"kind", i.kind}, {"message", i.message}};
}

void to_json(nlohmann::json& j, const ApplyReport& r) {
  j = {{"entries_created", r.entries_created},
       {"rejected", r.rejected},
       {"lexicon_additions", r.lexicon_additions},
       {"issues", r.issues},
       {"warnings", r.warnings}};
}

void to_json(nlohmann::json& j, const ImportSummary& s) {
  j = {{"decision_date", s.decision_date.str()},
       {"rows", s.rows},
       {"report", s.report},
       {"parse_issues", s.parse_issues}};
}

void to_json(nlohmann::json& j, const TrainSummary& s) {
  j = {{"batches", s.batches},     {"examples", s.examples},   {"positives", s.positives},
       {"negatives", s.negatives}, {"mask", s.mask},           {"dimension", s.dimension},
       {"restarts", s.restarts},   {"final_loss", s.final_loss}, {"model", s.model_path.string()}};
}

void to_json(nlohmann::json& j, const PendingCandidate& p) {
  nlohmann::json contexts = nlohmann::json::array();
  for (const auto& c : p.item.contexts) {
    nlohmann::json marks = nlohmann::json::array();
    for (const auto& m : c.marks) marks.push_back({m.begin, m.end});
    contexts.push_back({{"article_id", c.article_id},
                        {"journal", c.journal},
                        {"paragraph_index", c.paragraph_index},
                        {"text", c.text},
                        {"marks", marks}});
  }
  nlohmann::json flags = nlohmann::json::array();
  if (p.flags.char_ngram_suspect) flags.push_back("char_ngram_suspect");
  if (p.flags.concat_suspect) flags.push_back("concat_suspect");
  if (p.flags.spell_suspect) flags.push_back("spell_suspect");
  j = {{"wid", p.item.wid},
       {"word", p.item.word},
       {"date", p.date.str()},
       {"rank", p.rank ? nlohmann::json(*p.rank) : nlohmann::json(nullptr)},
       {"score", p.probability ? nlohmann::json(*p.probability) : nlohmann::json(nullptr)},
       {"abs_freq", p.abs_freq},
       {"doc_freq", p.doc_freq},
       {"filter_flags", flags},
       {"contexts", contexts}};
}

}  // namespace logoscope
