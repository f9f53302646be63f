// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "feature_builder.hpp"

namespace logoscope {

struct LabeledExample {
  std::vector<double> x;
  bool positive = false;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

using Dataset = std::vector<LabeledExample>;

enum class Loss { kLogistic, kHinge };

struct RankerHyper {
  double cost = 1.0;  // C; the L2 strength is 1 / (C * n)
  double learning_rate = 0.5;
  std::size_t epochs = 500;
  std::uint64_t seed = 42;
  Loss loss = Loss::kLogistic;
};

struct TrainingMeta {
  std::size_t examples = 0;  // as given, before oversampling
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t oversampled_to = 0;  // size of the balanced set (0 when not oversampled)
  double oversampling_factor = 1.0;
  std::size_t restarts = 0;
  double final_learning_rate = 0.0;
  std::vector<double> loss_history;
};

struct RankerModel {
  std::vector<std::string> columns;
  FeatureMask mask;
  std::vector<double> mean;
  std::vector<double> scale;
  std::vector<double> weights;  // one per column, on standardized inputs
  double bias = 0.0;
  RankerHyper hyper;
  TrainingMeta meta;

  std::size_t dimension() const { return weights.size(); }
  void save(const std::filesystem::path& path) const;
  static RankerModel load(const std::filesystem::path& path);  // ModelMissing / BadModel
};

void to_json(nlohmann::json& j, const RankerModel& m);
void from_json(const nlohmann::json& j, RankerModel& m);

// Duplicates minority examples, cycling through a seeded shuffle, until both
// classes have the same size. Throws SingleClassDataset.
Dataset oversample(const Dataset& dataset, std::uint64_t seed);

// Regularized objective on already standardized inputs; theta = weights then
// bias. Fills `gradient` when non-null.
double objective(const Dataset& standardized, const std::vector<double>& theta, double lambda, Loss loss,
                 std::vector<double>* gradient);

// Full-batch gradient descent on the data as given (no oversampling). A
// non-finite or increasing loss restarts with half the learning rate, at most
// five times; afterwards an increasing step is retried with a halved rate.
RankerModel train(const Dataset& dataset, const RankerHyper& hyper);

// Oversamples, then trains.
RankerModel train_balanced(const Dataset& dataset, const RankerHyper& hyper);

double linear_score(const RankerModel& model, const std::vector<double>& x);
// In (0, 1); saturates at 1e-15 from either end. Throws DimensionMismatch.
double predict_proba(const RankerModel& model, const std::vector<double>& x);

struct RankedItem {
  std::size_t index = 0;  // into the input
  double score = 0.0;
  double probability = 0.0;
};

struct RankInput {
  std::string surface;
  std::size_t abs_freq = 0;
  std::vector<double> x;
};

// Descending probability (by the underlying score), then abs_freq desc, then
// surface asc.
std::vector<RankedItem> rank(const RankerModel& model, const std::vector<RankInput>& inputs);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
  std::size_t support = 0;
};

struct CvReport {
  std::size_t folds = 0;
  ClassMetrics positive;
  ClassMetrics negative;
  ClassMetrics both;  // support-weighted average of the two classes
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t true_negatives = 0;
  std::size_t false_negatives = 0;
  std::vector<std::vector<std::size_t>> fold_indices;

  std::size_t total() const { return true_positives + false_positives + true_negatives + false_negatives; }
  // Table layout: class | Prec | Rec | F | corr.
  std::string table() const;
};

nlohmann::json to_json(const CvReport& report);

// Stratified seeded folds; oversampling only inside each training part.
// Throws TooFewExamples when the dataset is smaller than k.
CvReport cross_validate(const Dataset& dataset, std::size_t k, const RankerHyper& hyper);

ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn);

}  // namespace logoscope
