// Copyright 2026 The ConXsense Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "conxsense/classifier/dataset.hpp"
#include "conxsense/classifier/knn.hpp"
#include "conxsense/classifier/naive_bayes.hpp"
#include "conxsense/classifier/random_forest.hpp"
#include "conxsense/error.hpp"
#include "conxsense/features.hpp"

namespace conxsense {

enum class ModelKind { knn, naive_bayes, random_forest };

inline std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::knn: return "knn";
    case ModelKind::naive_bayes: return "naive_bayes";
    case ModelKind::random_forest: return "random_forest";
  }
  return "knn";
}

inline std::optional<ModelKind> parse_model_kind(std::string_view s) {
  if (s == "knn") return ModelKind::knn;
  if (s == "naive_bayes" || s == "nb") return ModelKind::naive_bayes;
  if (s == "random_forest" || s == "rf") return ModelKind::random_forest;
  return std::nullopt;
}

struct ModelSpec {
  ModelKind kind = ModelKind::random_forest;
  std::size_t knn_k = 5;
  std::size_t rf_trees = 100;
  std::optional<double> rf_feature_frac;  // nullopt: ceil(sqrt(feature count))
  std::uint64_t seed = 42;
  double nb_var_floor = 1e-9;

  std::size_t rf_features_per_split() const {
    if (!rf_feature_frac) {
      return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(kFeatureCount))));
    }
    const auto m = static_cast<std::size_t>(std::ceil(*rf_feature_frac * kFeatureCount));
    return std::clamp<std::size_t>(m, 1, kFeatureCount);
  }

  void validate() const {
    if (knn_k < 1) throw InvalidParams("knn_k must be at least 1");
    if (rf_trees < 1) throw InvalidParams("rf_trees must be at least 1");
    if (rf_feature_frac && !(*rf_feature_frac > 0.0 && *rf_feature_frac <= 1.0)) {
      throw InvalidParams("rf_feature_frac must lie in (0, 1]");
    }
    if (!(nb_var_floor > 0.0)) throw InvalidParams("nb_var_floor must be positive");
  }
};

struct TrainedModel {
  ModelKind kind = ModelKind::random_forest;
  Task task = Task::misuse;
  std::variant<ml::KnnModel, ml::GaussianNbModel, ml::RandomForestModel> impl;

  ClassLabel positive_label() const { return relax_label(task); }
};

struct Prediction {
  ClassLabel label = ClassLabel::high_risk;
  double confidence = 0.0;      // support for `label`
  double positive_score = 0.0;  // support for the relax class, used for ROC
};

/// Rows sorted by timestamp (stable), so training does not depend on the
/// order the caller collected them in.
inline std::vector<LabeledFeatureVector> time_ordered(std::span<const LabeledFeatureVector> data) {
  std::vector<LabeledFeatureVector> sorted(data.begin(), data.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.fv.t < b.fv.t; });
  return sorted;
}

inline TrainedModel train(const ModelSpec& spec, std::span<const LabeledFeatureVector> data) {
  spec.validate();
  if (data.empty()) throw InsufficientData("any", 1);
  const Task task = data.front().task;
  for (const auto& d : data) {
    if (d.task != task) throw InvalidParams("training data mixes tasks");
  }
  const auto sorted = time_ordered(data);
  const auto rows = ml::to_samples(sorted);

  std::size_t pos = 0;
  for (const auto& r : rows) pos += r.positive ? 1 : 0;
  const std::size_t neg = rows.size() - pos;
  const std::size_t per_class = spec.kind == ModelKind::knn ? 1 : 2;
  if (pos < per_class) throw InsufficientData(std::string(to_string(relax_label(task))), per_class);
  if (neg < per_class) {
    throw InsufficientData(std::string(to_string(restrict_label(task))), per_class);
  }
  if (spec.kind == ModelKind::knn && rows.size() < spec.knn_k) {
    throw InsufficientData("any", spec.knn_k);
  }

  TrainedModel m{spec.kind, task, {}};
  switch (spec.kind) {
    case ModelKind::knn:
      m.impl = ml::train_knn(rows, spec.knn_k);
      break;
    case ModelKind::naive_bayes:
      m.impl = ml::train_naive_bayes(rows, spec.nb_var_floor);
      break;
    case ModelKind::random_forest:
      m.impl = ml::train_random_forest(rows, spec.rf_trees, spec.rf_features_per_split(),
                                       spec.seed);
      break;
  }
  return m;
}

/// Label and confidence for one feature vector. Equal support for both
/// classes resolves to the restrictive (negative) class.
inline Prediction predict(const TrainedModel& model, const FeatureArray& x) {
  double score = 0.0;
  if (const auto* knn = std::get_if<ml::KnnModel>(&model.impl)) {
    const auto k = std::min(knn->k, knn->points.size());
    score = static_cast<double>(ml::knn_positive_votes(*knn, x)) / static_cast<double>(k);
  } else if (const auto* nb = std::get_if<ml::GaussianNbModel>(&model.impl)) {
    score = ml::naive_bayes_posterior(*nb, x)[1];
  } else {
    const auto& rf = std::get<ml::RandomForestModel>(model.impl);
    score = static_cast<double>(ml::forest_positive_votes(rf, x)) /
            static_cast<double>(rf.trees.size());
  }
  const bool positive = score > 0.5;
  return {positive ? relax_label(model.task) : restrict_label(model.task),
          positive ? score : 1.0 - score, score};
}

inline Prediction predict(const TrainedModel& model, const FeatureVector& fv) {
  return predict(model, fv.f);
}

}  // namespace conxsense
