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
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "conxsense/classifier/dataset.hpp"

namespace conxsense::ml {

struct KnnModel {
  std::size_t k = 5;
  Standardizer scale;
  std::vector<FeatureArray> points;  // standardized
  std::vector<bool> positive;
};

inline KnnModel train_knn(std::span<const Sample> rows, std::size_t k) {
  KnnModel m;
  m.k = k;
  m.scale = Standardizer::fit(rows);
  for (const auto& r : rows) {
    m.points.push_back(m.scale.apply(r.x));
    m.positive.push_back(r.positive);
  }
  return m;
}

/// Number of positive labels among the k nearest training points under
/// Euclidean distance on standardized features. Distance ties go to the
/// earlier training row.
inline std::size_t knn_positive_votes(const KnnModel& m, const FeatureArray& x) {
  const FeatureArray z = m.scale.apply(x);
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(m.points.size());
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      const double diff = m.points[i][j] - z[j];
      d += diff * diff;
    }
    dist.emplace_back(d, i);
  }
  const std::size_t k = std::min(m.k, dist.size());
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
  std::size_t votes = 0;
  for (std::size_t i = 0; i < k; ++i) votes += m.positive[dist[i].second] ? 1 : 0;
  return votes;
}

}  // namespace conxsense::ml
