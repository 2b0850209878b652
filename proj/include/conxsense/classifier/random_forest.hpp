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
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "conxsense/classifier/dataset.hpp"
#include "conxsense/random.hpp"

namespace conxsense::ml {

/// Internal node: rows with x[feature] <= threshold go left. Leaf: feature
/// is -1 and `positive` holds the prediction.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  bool positive = false;

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;

  bool predict(const FeatureArray& x) const {
    std::size_t i = 0;
    while (!nodes[i].is_leaf()) {
      const auto& n = nodes[i];
      i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold
                                       ? n.left
                                       : n.right);
    }
    return nodes[i].positive;
  }

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct RandomForestModel {
  std::size_t features_per_split = 3;
  std::vector<DecisionTree> trees;
};

namespace detail {

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;  // weighted Gini: sum over children of n_child * gini
};

inline double gini_mass(std::size_t pos, std::size_t n) {
  if (n == 0) return 0.0;
  const double p = static_cast<double>(pos) / static_cast<double>(n);
  return static_cast<double>(n) * 2.0 * p * (1.0 - p);
}

/// Best threshold on one feature; feature stays -1 when the feature is
/// constant over the rows.
inline SplitChoice best_split_on(std::span<const Sample> rows, std::span<const std::size_t> idx,
                                 std::size_t feature) {
  std::vector<std::size_t> order(idx.begin(), idx.end());
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows[a].x[feature] < rows[b].x[feature];
  });
  std::size_t total_pos = 0;
  for (auto i : order) total_pos += rows[i].positive ? 1 : 0;

  SplitChoice best;
  std::size_t left_pos = 0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    left_pos += rows[order[i]].positive ? 1 : 0;
    const double a = rows[order[i]].x[feature];
    const double b = rows[order[i + 1]].x[feature];
    if (!(a < b)) continue;
    const std::size_t nl = i + 1;
    const std::size_t nr = order.size() - nl;
    const double imp = gini_mass(left_pos, nl) + gini_mass(total_pos - left_pos, nr);
    if (best.feature < 0 || imp < best.impurity) {
      double mid = a + (b - a) / 2.0;
      if (!(mid < b)) mid = a;
      best = {static_cast<int>(feature), mid, imp};
    }
  }
  return best;
}

inline DecisionTree grow_tree(std::span<const Sample> rows, std::vector<std::size_t> bootstrap,
                              std::size_t features_per_split, Rng& rng) {
  DecisionTree tree;
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> pending;
  tree.nodes.emplace_back();
  pending.emplace_back(0, std::move(bootstrap));

  while (!pending.empty()) {
    auto [node, idx] = std::move(pending.back());
    pending.pop_back();

    std::size_t pos = 0;
    for (auto i : idx) pos += rows[i].positive ? 1 : 0;
    const bool majority = pos * 2 > idx.size();  // ties favor the negative class

    SplitChoice best;
    if (pos != 0 && pos != idx.size()) {
      std::array<std::size_t, kFeatureCount> features{};
      std::iota(features.begin(), features.end(), std::size_t{0});
      rng.shuffle(std::span<std::size_t>(features));
      // Look past the random subset only when it has no usable split.
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        if (f >= features_per_split && best.feature >= 0) break;
        const auto cand = best_split_on(rows, idx, features[f]);
        if (cand.feature >= 0 && (best.feature < 0 || cand.impurity < best.impurity)) best = cand;
      }
    }

    if (best.feature < 0) {
      tree.nodes[node].positive = majority;
      continue;
    }

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    const auto f = static_cast<std::size_t>(best.feature);
    for (auto i : idx) (rows[i].x[f] <= best.threshold ? left : right).push_back(i);

    const auto left_id = tree.nodes.size();
    tree.nodes.emplace_back();
    const auto right_id = tree.nodes.size();
    tree.nodes.emplace_back();
    auto& n = tree.nodes[node];
    n.feature = best.feature;
    n.threshold = best.threshold;
    n.left = static_cast<int>(left_id);
    n.right = static_cast<int>(right_id);
    n.positive = majority;
    pending.emplace_back(right_id, std::move(right));
    pending.emplace_back(left_id, std::move(left));
  }
  return tree;
}

}  // namespace detail

/// Bagged CART trees with Gini splits and a random feature subset per node.
inline RandomForestModel train_random_forest(std::span<const Sample> rows, std::size_t trees,
                                             std::size_t features_per_split,
                                             std::uint64_t seed) {
  RandomForestModel m;
  m.features_per_split = std::clamp<std::size_t>(features_per_split, 1, kFeatureCount);
  Rng rng(seed);
  for (std::size_t t = 0; t < trees; ++t) {
    Rng tree_rng(rng.fork());
    std::vector<std::size_t> bootstrap(rows.size());
    for (auto& b : bootstrap) b = tree_rng.index(rows.size());
    m.trees.push_back(detail::grow_tree(rows, std::move(bootstrap), m.features_per_split,
                                        tree_rng));
  }
  return m;
}

inline std::size_t forest_positive_votes(const RandomForestModel& m, const FeatureArray& x) {
  std::size_t votes = 0;
  for (const auto& tree : m.trees) votes += tree.predict(x) ? 1 : 0;
  return votes;
}

}  // namespace conxsense::ml
