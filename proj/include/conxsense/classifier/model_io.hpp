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

#include <string>

#include "json.hpp"

#include "conxsense/classifier/model.hpp"
#include "conxsense/error.hpp"

namespace conxsense {

inline constexpr const char* kModelSchema = "conxsense-model";
inline constexpr int kModelSchemaVersion = 1;

namespace detail {

inline nlohmann::ordered_json array_json(const FeatureArray& a) {
  auto j = nlohmann::ordered_json::array();
  for (double v : a) j.push_back(v);
  return j;
}

inline FeatureArray array_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != kFeatureCount) throw Error("model: bad feature array");
  FeatureArray a{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) a[i] = j.at(i).get<double>();
  return a;
}

}  // namespace detail

inline nlohmann::ordered_json model_to_json(const TrainedModel& m) {
  nlohmann::ordered_json j;
  j["schema"] = kModelSchema;
  j["version"] = kModelSchemaVersion;
  j["kind"] = to_string(m.kind);
  j["task"] = to_string(m.task);
  j["positive_label"] = to_string(m.positive_label());
  j["features"] = kFeatureNames;

  if (const auto* knn = std::get_if<ml::KnnModel>(&m.impl)) {
    j["k"] = knn->k;
    j["mean"] = detail::array_json(knn->scale.mean);
    j["stddev"] = detail::array_json(knn->scale.stddev);
    auto pts = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < knn->points.size(); ++i) {
      pts.push_back({{"x", detail::array_json(knn->points[i])}, {"positive", bool(knn->positive[i])}});
    }
    j["points"] = std::move(pts);
  } else if (const auto* nb = std::get_if<ml::GaussianNbModel>(&m.impl)) {
    for (const char* cls : {"negative", "positive"}) {
      const std::size_t c = std::string(cls) == "positive" ? 1 : 0;
      j[cls] = {{"log_prior", nb->log_prior[c]},
                {"mean", detail::array_json(nb->mean[c])},
                {"var", detail::array_json(nb->var[c])}};
    }
  } else {
    const auto& rf = std::get<ml::RandomForestModel>(m.impl);
    j["features_per_split"] = rf.features_per_split;
    auto trees = nlohmann::ordered_json::array();
    for (const auto& tree : rf.trees) {
      auto nodes = nlohmann::ordered_json::array();
      for (const auto& n : tree.nodes) {
        nodes.push_back({n.feature, n.threshold, n.left, n.right, n.positive});
      }
      trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
  }
  return j;
}

inline TrainedModel model_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != kModelSchema) throw Error("model: unknown schema");
  if (j.value("version", 0) != kModelSchemaVersion) throw Error("model: unsupported version");
  const auto kind = parse_model_kind(j.at("kind").get<std::string>());
  const auto task = parse_task(j.at("task").get<std::string>());
  if (!kind || !task) throw Error("model: bad kind or task");

  TrainedModel m{*kind, *task, {}};
  switch (*kind) {
    case ModelKind::knn: {
      ml::KnnModel knn;
      knn.k = j.at("k").get<std::size_t>();
      knn.scale.mean = detail::array_from(j.at("mean"));
      knn.scale.stddev = detail::array_from(j.at("stddev"));
      for (const auto& p : j.at("points")) {
        knn.points.push_back(detail::array_from(p.at("x")));
        knn.positive.push_back(p.at("positive").get<bool>());
      }
      m.impl = std::move(knn);
      break;
    }
    case ModelKind::naive_bayes: {
      ml::GaussianNbModel nb;
      for (std::size_t c = 0; c < 2; ++c) {
        const auto& cj = j.at(c == 1 ? "positive" : "negative");
        nb.log_prior[c] = cj.at("log_prior").get<double>();
        nb.mean[c] = detail::array_from(cj.at("mean"));
        nb.var[c] = detail::array_from(cj.at("var"));
      }
      m.impl = nb;
      break;
    }
    case ModelKind::random_forest: {
      ml::RandomForestModel rf;
      rf.features_per_split = j.at("features_per_split").get<std::size_t>();
      for (const auto& tj : j.at("trees")) {
        ml::DecisionTree tree;
        for (const auto& nj : tj) {
          tree.nodes.push_back({nj.at(0).get<int>(), nj.at(1).get<double>(), nj.at(2).get<int>(),
                                nj.at(3).get<int>(), nj.at(4).get<bool>()});
        }
        if (tree.nodes.empty()) throw Error("model: empty tree");
        const auto n = static_cast<int>(tree.nodes.size());
        for (int i = 0; i < n; ++i) {
          const auto& node = tree.nodes[static_cast<std::size_t>(i)];
          if (node.is_leaf()) continue;
          // Children always follow their parent, which also rules out cycles.
          if (node.feature >= static_cast<int>(kFeatureCount) || node.left <= i ||
              node.right <= i || node.left >= n || node.right >= n) {
            throw Error("model: malformed tree node " + std::to_string(i));
          }
        }
        rf.trees.push_back(std::move(tree));
      }
      if (rf.trees.empty()) throw Error("model: forest without trees");
      m.impl = std::move(rf);
      break;
    }
  }
  return m;
}

}  // namespace conxsense
