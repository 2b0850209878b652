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
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "conxsense/classifier/model.hpp"
#include "conxsense/classifier/roc.hpp"
#include "conxsense/error.hpp"
#include "conxsense/random.hpp"

namespace conxsense {

struct FoldResult {
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  Confusion confusion;
  RocCurve roc;
};

struct EvalResult {
  std::size_t folds = 0;
  std::vector<std::string> warnings;
  std::vector<FoldResult> per_fold;
  std::vector<ScoredExample> pooled_scores;  // in original data order
  Confusion pooled_confusion;
  RocCurve pooled_roc;
  std::vector<RocPoint> averaged_roc;  // vertical average of per-fold curves

  double mean_fold_auc() const {
    double s = 0.0;
    for (const auto& f : per_fold) s += f.roc.auc;
    return per_fold.empty() ? 0.0 : s / static_cast<double>(per_fold.size());
  }
};

inline Confusion confusion_of(bool predicted_positive, bool actual_positive) {
  Confusion c;
  if (predicted_positive) {
    (actual_positive ? c.tp : c.fp) = 1;
  } else {
    (actual_positive ? c.fn : c.tn) = 1;
  }
  return c;
}

/// Fold index per row: each class is shuffled with the model seed and dealt
/// round-robin, continuing the deal across classes.
inline std::vector<std::size_t> stratified_folds(std::span<const LabeledFeatureVector> data,
                                                 std::size_t folds, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> fold_of(data.size(), 0);
  std::size_t next = 0;
  for (const bool cls : {true, false}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data[i].positive() == cls) members.push_back(i);
    }
    rng.shuffle(std::span<std::size_t>(members));
    for (auto i : members) fold_of[i] = next++ % folds;
  }
  return fold_of;
}

/// Stratified k-fold cross-validation; each fold refits the model (and its
/// standardization) on the remaining rows. When the minority class has fewer
/// rows than `folds`, the fold count drops to that size and a warning is
/// recorded.
inline EvalResult cross_validate(const ModelSpec& spec, std::span<const LabeledFeatureVector> data,
                                 std::size_t folds = 10) {
  std::size_t pos = 0;
  for (const auto& d : data) pos += d.positive() ? 1 : 0;
  const std::size_t neg = data.size() - pos;
  if (pos < 2 || neg < 2) {
    throw TooFewExamples("cross-validation needs at least 2 examples of each class (have " +
                         std::to_string(pos) + " positive, " + std::to_string(neg) +
                         " negative)");
  }
  if (folds < 2) throw InvalidParams("cross-validation needs at least 2 folds");

  EvalResult result;
  const std::size_t minority = std::min(pos, neg);
  if (minority < folds) {
    result.warnings.push_back("reduced folds from " + std::to_string(folds) + " to " +
                              std::to_string(minority) + " (minority class size)");
    folds = minority;
  }
  result.folds = folds;

  const auto fold_of = stratified_folds(data, folds, spec.seed);
  result.pooled_scores.resize(data.size());
  std::vector<RocCurve> curves;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<LabeledFeatureVector> train_rows;
    std::vector<std::size_t> test_idx;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (fold_of[i] == f) {
        test_idx.push_back(i);
      } else {
        train_rows.push_back(data[i]);
      }
    }
    const TrainedModel model = train(spec, train_rows);
    FoldResult fr;
    fr.train_size = train_rows.size();
    fr.test_size = test_idx.size();
    std::vector<ScoredExample> scores;
    for (auto i : test_idx) {
      const Prediction p = predict(model, data[i].fv);
      const bool actual = data[i].positive();
      fr.confusion += confusion_of(is_relax(p.label), actual);
      scores.push_back({p.positive_score, actual});
      result.pooled_scores[i] = {p.positive_score, actual};
    }
    fr.roc = roc_curve(scores);
    result.pooled_confusion += fr.confusion;
    curves.push_back(fr.roc);
    result.per_fold.push_back(std::move(fr));
  }
  result.pooled_roc = roc_curve(result.pooled_scores);
  result.averaged_roc = vertical_average(curves);
  return result;
}

}  // namespace conxsense
