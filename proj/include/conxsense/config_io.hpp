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

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "conxsense/classifier/model.hpp"
#include "conxsense/enforcement.hpp"
#include "conxsense/error.hpp"
#include "conxsense/policy_io.hpp"
#include "conxsense/profiler.hpp"

namespace conxsense {

/// Every tunable of the pipeline in one place. Durations are stored in
/// seconds in the JSON form.
struct Config {
  ProfilerParams profiler;
  ModelSpec model;
  std::size_t folds = 10;
  std::vector<double> target_fprs{0.10, 0.035};
  bool causal_features = false;  // profile only the history before each feedback
  ReplayOptions replay;
  Thresholds thresholds = default_policy().thresholds;

  void validate() const {
    profiler.validate();
    model.validate();
    if (folds < 2) throw InvalidParams("folds must be at least 2");
    for (double f : target_fprs) {
      if (!(f >= 0.0 && f <= 1.0)) throw InvalidParams("target FPR outside [0, 1]");
    }
    if (replay.cadence <= Duration::zero()) throw InvalidParams("cadence must be positive");
    if (replay.unlock_delay < Duration::zero()) throw InvalidParams("unlock_delay must be >= 0");
  }
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, std::string_view section,
                                std::initializer_list<std::string_view> known) {
  if (!j.is_object()) throw InvalidParams("config: '" + std::string(section) + "' must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw InvalidParams("config: unknown key '" + std::string(section) + "." + key + "'");
  }
}

inline void read_seconds(const nlohmann::json& j, const char* key, Duration& out) {
  if (j.contains(key)) out = seconds(j.at(key).get<double>());
}

template <typename T>
void read_value(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

inline CountRule parse_count_rule(const std::string& s) {
  if (s == "greater") return CountRule::greater;
  if (s == "greater_equal") return CountRule::greater_equal;
  throw InvalidParams("config: count rule must be 'greater' or 'greater_equal'");
}

inline std::string_view to_string(CountRule r) {
  return r == CountRule::greater ? "greater" : "greater_equal";
}

}  // namespace detail

inline Config config_from_json(const nlohmann::json& j) {
  using detail::read_seconds;
  using detail::read_value;
  Config c;
  detail::reject_unknown_keys(
      j, "", {"staypoints", "coi", "context", "model", "evaluation", "enforcement", "thresholds"});

  if (j.contains("staypoints")) {
    const auto& s = j.at("staypoints");
    detail::reject_unknown_keys(s, "staypoints",
                                {"r_sp_m", "t_min_sp_s", "t_gap_sp_s", "t_max_wifi_s", "jaccard_max"});
    auto& p = c.profiler.staypoints;
    read_value(s, "r_sp_m", p.r_sp_m);
    read_seconds(s, "t_min_sp_s", p.t_min_sp);
    read_seconds(s, "t_gap_sp_s", p.t_gap_sp);
    read_seconds(s, "t_max_wifi_s", p.t_max_wifi);
    read_value(s, "jaccard_max", p.jaccard_max);
  }
  if (j.contains("coi")) {
    const auto& s = j.at("coi");
    detail::reject_unknown_keys(
        s, "coi", {"gps_max_m", "f_min_coi", "t_min_coi_s", "gps_count_rule", "wifi_count_rule"});
    auto& p = c.profiler.coi;
    read_value(s, "gps_max_m", p.gps_max_m);
    read_value(s, "f_min_coi", p.f_min_coi);
    read_seconds(s, "t_min_coi_s", p.t_min_coi);
    if (s.contains("gps_count_rule")) {
      p.gps_count_rule = detail::parse_count_rule(s.at("gps_count_rule").get<std::string>());
    }
    if (s.contains("wifi_count_rule")) {
      p.wifi_count_rule = detail::parse_count_rule(s.at("wifi_count_rule").get<std::string>());
    }
  }
  if (j.contains("context")) {
    const auto& s = j.at("context");
    detail::reject_unknown_keys(s, "context",
                                {"eps_visit_s", "eps_enc_s", "f_min_famdev", "t_min_famdev_s",
                                 "visit_jaccard_max"});
    auto& p = c.profiler.context;
    read_seconds(s, "eps_visit_s", p.eps_visit);
    read_seconds(s, "eps_enc_s", p.eps_enc);
    read_value(s, "f_min_famdev", p.f_min_famdev);
    read_seconds(s, "t_min_famdev_s", p.t_min_famdev);
    read_value(s, "visit_jaccard_max", p.visit_jaccard_max);
  }
  if (j.contains("model")) {
    const auto& s = j.at("model");
    detail::reject_unknown_keys(s, "model",
                                {"kind", "knn_k", "rf_trees", "rf_feature_frac", "seed", "nb_var_floor"});
    auto& m = c.model;
    if (s.contains("kind")) {
      const auto k = parse_model_kind(s.at("kind").get<std::string>());
      if (!k) throw InvalidParams("config: unknown model kind");
      m.kind = *k;
    }
    read_value(s, "knn_k", m.knn_k);
    read_value(s, "rf_trees", m.rf_trees);
    if (s.contains("rf_feature_frac")) {
      const auto& v = s.at("rf_feature_frac");
      m.rf_feature_frac = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
    }
    read_value(s, "seed", m.seed);
    read_value(s, "nb_var_floor", m.nb_var_floor);
  }
  if (j.contains("evaluation")) {
    const auto& s = j.at("evaluation");
    detail::reject_unknown_keys(s, "evaluation", {"folds", "target_fprs", "causal_features"});
    read_value(s, "folds", c.folds);
    read_value(s, "target_fprs", c.target_fprs);
    read_value(s, "causal_features", c.causal_features);
  }
  if (j.contains("enforcement")) {
    const auto& s = j.at("enforcement");
    detail::reject_unknown_keys(s, "enforcement", {"cadence_s", "unlock_delay_s"});
    read_seconds(s, "cadence_s", c.replay.cadence);
    read_seconds(s, "unlock_delay_s", c.replay.unlock_delay);
  }
  if (j.contains("thresholds")) {
    c.thresholds = {};
    for (const auto& [task_name, sensors] : j.at("thresholds").items()) {
      const auto task = parse_task(task_name);
      if (!task) throw InvalidParams("config: unknown task " + task_name);
      for (const auto& [sensor, conf] : sensors.items()) {
        c.thresholds.set(*task, sensor, conf.get<double>());
      }
    }
  }
  c.validate();
  return c;
}

inline nlohmann::ordered_json config_to_json(const Config& c) {
  nlohmann::ordered_json j;
  const auto& sp = c.profiler.staypoints;
  j["staypoints"] = {{"r_sp_m", sp.r_sp_m},
                     {"t_min_sp_s", to_seconds(sp.t_min_sp)},
                     {"t_gap_sp_s", to_seconds(sp.t_gap_sp)},
                     {"t_max_wifi_s", to_seconds(sp.t_max_wifi)},
                     {"jaccard_max", sp.jaccard_max}};
  const auto& co = c.profiler.coi;
  j["coi"] = {{"gps_max_m", co.gps_max_m},
              {"f_min_coi", co.f_min_coi},
              {"t_min_coi_s", to_seconds(co.t_min_coi)},
              {"gps_count_rule", detail::to_string(co.gps_count_rule)},
              {"wifi_count_rule", detail::to_string(co.wifi_count_rule)}};
  const auto& cx = c.profiler.context;
  j["context"] = {{"eps_visit_s", to_seconds(cx.eps_visit)},
                  {"eps_enc_s", to_seconds(cx.eps_enc)},
                  {"f_min_famdev", cx.f_min_famdev},
                  {"t_min_famdev_s", to_seconds(cx.t_min_famdev)},
                  {"visit_jaccard_max", cx.visit_jaccard_max}};
  const auto& m = c.model;
  j["model"] = {{"kind", to_string(m.kind)},
                {"knn_k", m.knn_k},
                {"rf_trees", m.rf_trees},
                {"rf_feature_frac", m.rf_feature_frac ? nlohmann::ordered_json(*m.rf_feature_frac)
                                                      : nlohmann::ordered_json(nullptr)},
                {"seed", m.seed},
                {"nb_var_floor", m.nb_var_floor}};
  j["evaluation"] = {{"folds", c.folds}, {"target_fprs", c.target_fprs},
                     {"causal_features", c.causal_features}};
  j["enforcement"] = {{"cadence_s", to_seconds(c.replay.cadence)},
                      {"unlock_delay_s", to_seconds(c.replay.unlock_delay)}};
  j["thresholds"] = nlohmann::ordered_json::object();
  for (const auto& [key, conf] : c.thresholds.values) {
    j["thresholds"][std::string(to_string(key.first))][key.second] = conf;
  }
  return j;
}

}  // namespace conxsense
