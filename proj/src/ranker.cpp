// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "ranker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "error.hpp"
#include "file_util.hpp"

namespace logoscope {

namespace {

constexpr std::size_t kMaxRestarts = 5;
constexpr double kProbabilityFloor = 1e-15;

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void count_classes(const Dataset& d, std::size_t& pos, std::size_t& neg) {
  pos = static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](const auto& e) { return e.positive; }));
  neg = d.size() - pos;
}

struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const Dataset& d) {
    const std::size_t dim = d.empty() ? 0 : d.front().x.size();
    Standardizer s{std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
    if (d.empty()) return s;
    const double n = static_cast<double>(d.size());
    for (const auto& e : d) {
      for (std::size_t j = 0; j < dim; ++j) s.mean[j] += e.x[j] / n;
    }
    std::vector<double> var(dim, 0.0);
    for (const auto& e : d) {
      for (std::size_t j = 0; j < dim; ++j) var[j] += (e.x[j] - s.mean[j]) * (e.x[j] - s.mean[j]) / n;
    }
    for (std::size_t j = 0; j < dim; ++j) s.scale[j] = var[j] > 1e-24 ? std::sqrt(var[j]) : 1.0;
    return s;
  }

  Dataset apply(const Dataset& d) const {
    Dataset out = d;
    for (auto& e : out) {
      for (std::size_t j = 0; j < e.x.size(); ++j) e.x[j] = (e.x[j] - mean[j]) / scale[j];
    }
    return out;
  }
};

void check_dimensions(const Dataset& d) {
  if (d.empty()) return;
  const std::size_t dim = d.front().x.size();
  for (const auto& e : d) {
    if (e.x.size() != dim) throw Error(ErrorCode::kInvalidArgument, "DimensionMismatch", "examples differ in dimension");
  }
}

}  // namespace

Dataset oversample(const Dataset& dataset, std::uint64_t seed) {
  std::size_t pos = 0, neg = 0;
  count_classes(dataset, pos, neg);
  if (pos == 0 || neg == 0) {
    throw Error(ErrorCode::kInvalidArgument, "SingleClassDataset", "oversampling needs both classes");
  }
  Dataset out = dataset;
  if (pos == neg) return out;
  const bool minority_positive = pos < neg;
  std::vector<std::size_t> minority;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset[i].positive == minority_positive) minority.push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(minority.begin(), minority.end(), rng);
  const std::size_t missing = std::max(pos, neg) - std::min(pos, neg);
  for (std::size_t i = 0; i < missing; ++i) out.push_back(dataset[minority[i % minority.size()]]);
  return out;
}

double objective(const Dataset& data, const std::vector<double>& theta, double lambda, Loss loss,
                 std::vector<double>* gradient) {
  const std::size_t dim = theta.size() - 1;
  const double n = static_cast<double>(data.size());
  if (gradient) gradient->assign(theta.size(), 0.0);
  double total = 0.0;
  for (const auto& e : data) {
    double s = theta[dim];
    for (std::size_t j = 0; j < dim; ++j) s += theta[j] * e.x[j];
    const double y = e.positive ? 1.0 : -1.0;
    double coef = 0.0;  // d loss_i / d score
    if (loss == Loss::kLogistic) {
      total += softplus(-y * s);
      coef = -y * sigmoid(-y * s);
    } else {
      const double margin = 1.0 - y * s;
      if (margin > 0) {
        total += margin;
        coef = -y;
      }
    }
    if (gradient && coef != 0.0) {
      for (std::size_t j = 0; j < dim; ++j) (*gradient)[j] += coef * e.x[j] / n;
      (*gradient)[dim] += coef / n;
    }
  }
  double reg = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    reg += theta[j] * theta[j];
    if (gradient) (*gradient)[j] += lambda * theta[j];
  }
  return total / n + 0.5 * lambda * reg;
}

RankerModel train(const Dataset& dataset, const RankerHyper& hyper) {
  check_dimensions(dataset);
  std::size_t pos = 0, neg = 0;
  count_classes(dataset, pos, neg);
  if (pos == 0 || neg == 0) throw Error(ErrorCode::kInvalidArgument, "SingleClassDataset", "training needs both classes");
  if (pos < 2 || neg < 2) throw Error(ErrorCode::kInvalidArgument, "TooFewExamples", "need at least 2 examples per class");
  if (hyper.cost <= 0 || hyper.learning_rate <= 0 || hyper.epochs == 0) {
    throw Error(ErrorCode::kInvalidArgument, "BadHyperparameters", "cost, learning rate and epochs must be positive");
  }

  const Standardizer st = Standardizer::fit(dataset);
  const Dataset data = st.apply(dataset);
  const std::size_t dim = dataset.front().x.size();
  const double lambda = 1.0 / (hyper.cost * static_cast<double>(dataset.size()));

  RankerModel model;
  model.mean = st.mean;
  model.scale = st.scale;
  model.hyper = hyper;
  model.meta.examples = dataset.size();
  model.meta.positives = pos;
  model.meta.negatives = neg;

  for (std::size_t attempt = 0;; ++attempt) {
    double lr = hyper.learning_rate / std::pow(2.0, static_cast<double>(attempt));
    std::vector<double> theta(dim + 1, 0.0), grad, next_grad, next(dim + 1);
    double current = objective(data, theta, lambda, hyper.loss, &grad);
    std::vector<double> history{current};
    bool diverged = false;
    for (std::size_t epoch = 0; epoch < hyper.epochs && !diverged; ++epoch) {
      for (int backtrack = 0;; ++backtrack) {
        for (std::size_t j = 0; j <= dim; ++j) next[j] = theta[j] - lr * grad[j];
        const double value = objective(data, next, lambda, hyper.loss, &next_grad);
        const bool increased = value > current;
        if (std::isfinite(value) && !increased) {
          theta.swap(next);
          grad.swap(next_grad);
          current = value;
          history.push_back(current);
          break;
        }
        if (attempt < kMaxRestarts) {
          diverged = true;
          break;
        }
        if (!std::isfinite(value) && backtrack >= 60) {
          throw Error(ErrorCode::kNumeric, "NonFiniteLoss", "training loss is not finite");
        }
        if (backtrack >= 60) {
          history.push_back(current);  // no descent step left at machine precision
          break;
        }
        lr /= 2;
      }
    }
    if (diverged) continue;
    model.weights.assign(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(dim));
    model.bias = theta[dim];
    model.meta.restarts = attempt;
    model.meta.final_learning_rate = lr;
    model.meta.loss_history = std::move(history);
    return model;
  }
}

RankerModel train_balanced(const Dataset& dataset, const RankerHyper& hyper) {
  const Dataset balanced = oversample(dataset, hyper.seed);
  RankerModel model = train(balanced, hyper);
  std::size_t pos = 0, neg = 0;
  count_classes(dataset, pos, neg);
  model.meta.examples = dataset.size();
  model.meta.positives = pos;
  model.meta.negatives = neg;
  model.meta.oversampled_to = balanced.size();
  model.meta.oversampling_factor =
      static_cast<double>(std::max(pos, neg)) / static_cast<double>(std::max<std::size_t>(1, std::min(pos, neg)));
  return model;
}

double linear_score(const RankerModel& model, const std::vector<double>& x) {
  if (x.size() != model.weights.size()) {
    throw Error(ErrorCode::kInvalidArgument, "DimensionMismatch",
                "vector has " + std::to_string(x.size()) + " features, model expects " + std::to_string(model.weights.size()));
  }
  double s = model.bias;
  for (std::size_t j = 0; j < x.size(); ++j) s += model.weights[j] * (x[j] - model.mean[j]) / model.scale[j];
  return s;
}

double predict_proba(const RankerModel& model, const std::vector<double>& x) {
  return std::clamp(sigmoid(linear_score(model, x)), kProbabilityFloor, 1.0 - kProbabilityFloor);
}

std::vector<RankedItem> rank(const RankerModel& model, const std::vector<RankInput>& inputs) {
  std::vector<RankedItem> items;
  items.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const double s = linear_score(model, inputs[i].x);
    items.push_back({i, s, std::clamp(sigmoid(s), kProbabilityFloor, 1.0 - kProbabilityFloor)});
  }
  std::sort(items.begin(), items.end(), [&](const RankedItem& a, const RankedItem& b) {
    if (a.score != b.score) return a.score > b.score;
    const auto& ia = inputs[a.index];
    const auto& ib = inputs[b.index];
    if (ia.abs_freq != ib.abs_freq) return ia.abs_freq > ib.abs_freq;
    if (ia.surface != ib.surface) return ia.surface < ib.surface;
    return a.index < b.index;
  });
  return items;
}

ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
  ClassMetrics m;
  m.precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  m.recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  m.f = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  m.support = tp + fn;
  return m;
}

CvReport cross_validate(const Dataset& dataset, std::size_t k, const RankerHyper& hyper) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "TooFewExamples", "need at least 2 folds");
  if (dataset.size() < k) {
    throw Error(ErrorCode::kInvalidArgument, "TooFewExamples",
                "dataset of " + std::to_string(dataset.size()) + " examples is smaller than k=" + std::to_string(k));
  }
  check_dimensions(dataset);
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < dataset.size(); ++i) (dataset[i].positive ? pos : neg).push_back(i);
  std::mt19937_64 rng(hyper.seed);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);

  CvReport report;
  report.folds = k;
  report.fold_indices.resize(k);
  for (std::size_t i = 0; i < pos.size(); ++i) report.fold_indices[i % k].push_back(pos[i]);
  for (std::size_t j = 0; j < neg.size(); ++j) report.fold_indices[(pos.size() + j) % k].push_back(neg[j]);
  for (auto& f : report.fold_indices) std::sort(f.begin(), f.end());

  for (std::size_t fold = 0; fold < k; ++fold) {
    std::vector<bool> in_test(dataset.size(), false);
    for (std::size_t i : report.fold_indices[fold]) in_test[i] = true;
    Dataset training;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if (!in_test[i]) training.push_back(dataset[i]);
    }
    RankerHyper fold_hyper = hyper;
    fold_hyper.seed = hyper.seed + fold + 1;
    const RankerModel model = train_balanced(training, fold_hyper);
    for (std::size_t i : report.fold_indices[fold]) {
      const bool predicted = predict_proba(model, dataset[i].x) >= 0.5;
      if (dataset[i].positive) {
        ++(predicted ? report.true_positives : report.false_negatives);
      } else {
        ++(predicted ? report.false_positives : report.true_negatives);
      }
    }
  }
  report.positive = class_metrics(report.true_positives, report.false_positives, report.false_negatives);
  report.negative = class_metrics(report.true_negatives, report.false_negatives, report.false_positives);
  const double n = static_cast<double>(report.total());
  const double wp = static_cast<double>(report.positive.support) / n;
  const double wn = static_cast<double>(report.negative.support) / n;
  report.both.precision = wp * report.positive.precision + wn * report.negative.precision;
  report.both.recall = wp * report.positive.recall + wn * report.negative.recall;
  report.both.f = wp * report.positive.f + wn * report.negative.f;
  report.both.support = report.total();
  return report;
}

std::string CvReport::table() const {
  std::string out = "class\tPrec\tRec\tF\tcorr.\n";
  char buf[128];
  auto row = [&](const char* name, const ClassMetrics& m, const std::string& corr) {
    std::snprintf(buf, sizeof buf, "%s\t%.3f\t%.3f\t%.3f\t", name, m.precision, m.recall, m.f);
    out += buf + corr + '\n';
  };
  row("pos", positive, "");
  row("neg", negative, "");
  row("both", both, std::to_string(true_positives));
  return out;
}

nlohmann::json to_json(const CvReport& r) {
  auto metrics = [](const ClassMetrics& m) {
    return nlohmann::json{{"precision", m.precision}, {"recall", m.recall}, {"f", m.f}, {"support", m.support}};
  };
  return {{"folds", r.folds},
          {"rows",
           {{{"class", "pos"}, {"metrics", metrics(r.positive)}, {"corr", nullptr}},
            {{"class", "neg"}, {"metrics", metrics(r.negative)}, {"corr", nullptr}},
            {{"class", "both"}, {"metrics", metrics(r.both)}, {"corr", r.true_positives}}}},
          {"confusion",
           {{"tp", r.true_positives}, {"fp", r.false_positives}, {"tn", r.true_negatives}, {"fn", r.false_negatives}}}};
}

void to_json(nlohmann::json& j, const RankerModel& m) {
  j = {{"format", "logoscope-ranker"},
       {"version", 1},
       {"columns", m.columns},
       {"mask", m.mask.str()},
       {"mean", m.mean},
       {"scale", m.scale},
       {"weights", m.weights},
       {"bias", m.bias},
       {"hyper",
        {{"cost", m.hyper.cost},
         {"learning_rate", m.hyper.learning_rate},
         {"epochs", m.hyper.epochs},
         {"seed", m.hyper.seed},
         {"loss", m.hyper.loss == Loss::kHinge ? "hinge" : "logistic"}}},
       {"meta",
        {{"examples", m.meta.examples},
         {"positives", m.meta.positives},
         {"negatives", m.meta.negatives},
         {"oversampled_to", m.meta.oversampled_to},
         {"oversampling_factor", m.meta.oversampling_factor},
         {"restarts", m.meta.restarts},
         {"final_learning_rate", m.meta.final_learning_rate},
         {"loss_history", m.meta.loss_history}}}};
}

void from_json(const nlohmann::json& j, RankerModel& m) {
  if (j.value("format", "") != "logoscope-ranker" || j.value("version", 0) != 1) {
    throw Error(ErrorCode::kParse, "BadModel", "not a logoscope ranker model (version 1)");
  }
  m.columns = j.at("columns").get<std::vector<std::string>>();
  m.mask = FeatureMask::parse(j.at("mask").get<std::string>());
  m.mean = j.at("mean").get<std::vector<double>>();
  m.scale = j.at("scale").get<std::vector<double>>();
  m.weights = j.at("weights").get<std::vector<double>>();
  m.bias = j.at("bias").get<double>();
  const auto& h = j.at("hyper");
  m.hyper.cost = h.at("cost").get<double>();
  m.hyper.learning_rate = h.at("learning_rate").get<double>();
  m.hyper.epochs = h.at("epochs").get<std::size_t>();
  m.hyper.seed = h.at("seed").get<std::uint64_t>();
  m.hyper.loss = h.at("loss").get<std::string>() == "hinge" ? Loss::kHinge : Loss::kLogistic;
  const auto& meta = j.at("meta");
  m.meta.examples = meta.at("examples").get<std::size_t>();
  m.meta.positives = meta.at("positives").get<std::size_t>();
  m.meta.negatives = meta.at("negatives").get<std::size_t>();
  m.meta.oversampled_to = meta.at("oversampled_to").get<std::size_t>();
  m.meta.oversampling_factor = meta.at("oversampling_factor").get<double>();
  m.meta.restarts = meta.at("restarts").get<std::size_t>();
  m.meta.final_learning_rate = meta.at("final_learning_rate").get<double>();
  m.meta.loss_history = meta.at("loss_history").get<std::vector<double>>();
  const std::size_t d = m.weights.size();
  if (m.columns.size() != d || m.mean.size() != d || m.scale.size() != d) {
    throw Error(ErrorCode::kParse, "BadModel", "inconsistent model dimensions");
  }
  for (double w : m.weights) {
    if (!std::isfinite(w)) throw Error(ErrorCode::kParse, "BadModel", "non-finite weight");
  }
}

void RankerModel::save(const std::filesystem::path& path) const {
  write_file_atomic(path, nlohmann::json(*this).dump(2) + '\n');
}

RankerModel RankerModel::load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kNotFound, "ModelMissing", "ranker model not found: " + path.string());
  }
  try {
    return nlohmann::json::parse(read_file(path)).get<RankerModel>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, "BadModel", path.string() + ": " + e.what());
  }
}

}  // namespace logoscope
