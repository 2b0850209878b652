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
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>

#include "conxsense/classifier/dataset.hpp"

namespace conxsense::ml {

/// Gaussian naive Bayes over two classes; index 1 is the positive class.
struct GaussianNbModel {
  std::array<double, 2> log_prior{};
  std::array<FeatureArray, 2> mean{};
  std::array<FeatureArray, 2> var{};
};

/// Each class variance is floored at `var_floor` times the feature's overall
/// training variance (or at `var_floor` itself for a constant feature).
inline GaussianNbModel train_naive_bayes(std::span<const Sample> rows, double var_floor) {
  GaussianNbModel m;
  std::array<std::size_t, 2> n{};
  for (const auto& r : rows) ++n[r.positive ? 1 : 0];

  const Standardizer overall = Standardizer::fit(rows);
  for (std::size_t c = 0; c < 2; ++c) {
    m.log_prior[c] = std::log(static_cast<double>(n[c]) / static_cast<double>(rows.size()));
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      double sum = 0.0;
      for (const auto& r : rows) {
        if ((r.positive ? 1u : 0u) == c) sum += r.x[j];
      }
      const double mu = sum / static_cast<double>(n[c]);
      double ss = 0.0;
      for (const auto& r : rows) {
        if ((r.positive ? 1u : 0u) == c) ss += (r.x[j] - mu) * (r.x[j] - mu);
      }
      const double total_var = overall.stddev[j] * overall.stddev[j];
      const double floor = var_floor * (total_var > 0.0 ? total_var : 1.0);
      m.mean[c][j] = mu;
      m.var[c][j] = std::max(ss / static_cast<double>(n[c]), floor);
    }
  }
  return m;
}

/// Posterior probability of both classes, summing to one.
inline std::array<double, 2> naive_bayes_posterior(const GaussianNbModel& m,
                                                   const FeatureArray& x) {
  std::array<double, 2> log_joint{};
  for (std::size_t c = 0; c < 2; ++c) {
    double lj = m.log_prior[c];
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      const double d = x[j] - m.mean[c][j];
      lj += -0.5 * std::log(2.0 * std::numbers::pi * m.var[c][j]) - d * d / (2.0 * m.var[c][j]);
    }
    log_joint[c] = lj;
  }
  const double top = std::max(log_joint[0], log_joint[1]);
  const double e0 = std::exp(log_joint[0] - top);
  const double e1 = std::exp(log_joint[1] - top);
  return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

}  // namespace conxsense::ml
