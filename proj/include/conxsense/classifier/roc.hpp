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
#include <limits>
#include <span>
#include <vector>

#include "conxsense/error.hpp"

namespace conxsense {

/// A score for the positive class and the true membership of the row.
struct ScoredExample {
  double score = 0.0;
  bool positive = false;
};

struct RocPoint {
  double threshold = 0.0;  // rows with score >= threshold are predicted positive
  double fpr = 0.0;
  double tpr = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // from (0,0) to (1,1), monotone
  double auc = 0.0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  Confusion& operator+=(const Confusion& o) {
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
  }
};

/// Threshold sweep over distinct scores in descending order; tied scores
/// move the curve in one diagonal step. AUC uses the trapezoidal rule, which
/// equals the normalized Mann-Whitney U statistic.
inline RocCurve roc_curve(std::span<const ScoredExample> scores) {
  RocCurve curve;
  for (const auto& s : scores) (s.positive ? curve.positives : curve.negatives) += 1;
  if (curve.positives == 0 || curve.negatives == 0) throw OneClassOnly();

  std::vector<ScoredExample> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.score > b.score; });

  const auto P = static_cast<double>(curve.positives);
  const auto N = static_cast<double>(curve.negatives);
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0, 0, 0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  double area = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double threshold = sorted[i].score;
    const std::size_t tp_before = tp;
    const std::size_t fp_before = fp;
    while (i < sorted.size() && sorted[i].score == threshold) {
      (sorted[i].positive ? tp : fp) += 1;
      ++i;
    }
    // trapezoid in count units: dFP * (TP_before + TP_after) / 2
    area += static_cast<double>(fp - fp_before) * static_cast<double>(tp_before + tp) / 2.0;
    curve.points.push_back({threshold, static_cast<double>(fp) / N, static_cast<double>(tp) / P,
                            tp, fp});
  }
  curve.auc = area / (P * N);
  return curve;
}

/// Best achievable operating point with FPR not above `target_fpr`.
struct OperatingPoint {
  double target_fpr = 0.0;
  RocPoint point;
  Confusion confusion;
};

inline OperatingPoint operating_point(const RocCurve& curve, double target_fpr) {
  OperatingPoint op{target_fpr, curve.points.front(), {}};
  for (const auto& p : curve.points) {
    if (p.fpr <= target_fpr && p.tpr > op.point.tpr) op.point = p;
  }
  op.confusion = {op.point.tp, op.point.fp, curve.negatives - op.point.fp,
                  curve.positives - op.point.tp};
  return op;
}

/// Confidence threshold that keeps the historical false positive rate at or
/// below `target_fpr`. Infinity means no threshold qualifies.
inline double threshold_for_target_fpr(const RocCurve& curve, double target_fpr) {
  return operating_point(curve, target_fpr).point.threshold;
}

/// Step-interpolated TPR of a curve at a given FPR.
inline double tpr_at(const RocCurve& curve, double fpr) {
  double best = 0.0;
  for (const auto& p : curve.points) {
    if (p.fpr <= fpr + 1e-12) best = std::max(best, p.tpr);
  }
  return best;
}

/// Vertical averaging: mean TPR across curves at fixed FPR grid points.
inline std::vector<RocPoint> vertical_average(std::span<const RocCurve> curves,
                                              std::size_t grid_steps = 100) {
  std::vector<RocPoint> out;
  if (curves.empty()) return out;
  for (std::size_t g = 0; g <= grid_steps; ++g) {
    const double fpr = static_cast<double>(g) / static_cast<double>(grid_steps);
    double sum = 0.0;
    for (const auto& c : curves) sum += tpr_at(c, fpr);
    out.push_back({0.0, fpr, sum / static_cast<double>(curves.size()), 0, 0});
  }
  return out;
}

}  // namespace conxsense
