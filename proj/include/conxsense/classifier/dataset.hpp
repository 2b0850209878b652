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
#include <span>
#include <vector>

#include "conxsense/features.hpp"

namespace conxsense::ml {

/// A training row: raw features and whether it belongs to the positive
/// (relax) class.
struct Sample {
  FeatureArray x{};
  bool positive = false;
};

inline std::vector<Sample> to_samples(std::span<const LabeledFeatureVector> data) {
  std::vector<Sample> out;
  out.reserve(data.size());
  for (const auto& d : data) out.push_back({d.fv.f, d.positive()});
  return out;
}

/// Per-feature z-score transform fitted on training rows only. Constant
/// features get a unit scale.
struct Standardizer {
  FeatureArray mean{};
  FeatureArray stddev{};

  static Standardizer fit(std::span<const Sample> rows) {
    Standardizer s;
    s.stddev.fill(1.0);
    if (rows.empty()) return s;
    const auto n = static_cast<double>(rows.size());
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      double sum = 0.0;
      for (const auto& r : rows) sum += r.x[j];
      const double mu = sum / n;
      double ss = 0.0;
      for (const auto& r : rows) ss += (r.x[j] - mu) * (r.x[j] - mu);
      const double sd = std::sqrt(ss / n);
      s.mean[j] = mu;
      s.stddev[j] = sd > 1e-12 * std::max(1.0, std::abs(mu)) ? sd : 1.0;
    }
    return s;
  }

  FeatureArray apply(const FeatureArray& x) const {
    FeatureArray z{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) z[j] = (x[j] - mean[j]) / stddev[j];
    return z;
  }
};

}  // namespace conxsense::ml
