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

#include "conxsense/error.hpp"
#include "conxsense/policy.hpp"

namespace conxsense {

/// Rule table, thresholds and the lockscreen dismissal threshold, as read
/// from one policy file:
///   {"apps": {id: "trusted"|"untrusted"},
///    "rules": [{"subject", "object", "op", "task", "relax_label"}],
///    "thresholds": {task: {sensor: confidence}}}
/// A rule with null/absent task and relax_label is unconditional. The
/// lockscreen threshold lives at thresholds.misuse.lockscreen.
struct Policy {
  RuleTable rules;
  Thresholds thresholds;

  double lockscreen_threshold() const {
    return thresholds.get(Task::misuse, kLockscreen).value_or(1.0);
  }

  void validate() const {
    rules.validate();
    thresholds.validate(rules);
  }
};

inline Policy policy_from_json(const nlohmann::json& j) {
  Policy p;
  if (j.contains("apps")) {
    for (const auto& [app, type] : j.at("apps").items()) {
      const auto t = parse_app_type(type.get<std::string>());
      if (!t) throw InvalidParams("policy: unknown app type for " + app);
      p.rules.apps[app] = *t;
    }
  }
  if (j.contains("rules")) {
    for (const auto& rj : j.at("rules")) {
      Rule r;
      const auto subject = parse_app_type(rj.at("subject").get<std::string>());
      if (!subject) throw InvalidParams("policy: unknown rule subject");
      r.subject = *subject;
      r.object = rj.at("object").get<std::string>();
      r.op = rj.at("op").get<std::string>();
      if (rj.contains("task") && !rj.at("task").is_null()) {
        r.task = parse_task(rj.at("task").get<std::string>());
        if (!r.task) throw InvalidParams("policy: unknown task");
      }
      if (rj.contains("relax_label") && !rj.at("relax_label").is_null()) {
        r.relax_label = parse_class_label(rj.at("relax_label").get<std::string>());
        if (!r.relax_label) throw InvalidParams("policy: unknown relax_label");
      }
      p.rules.rules.push_back(std::move(r));
    }
  }
  if (j.contains("thresholds")) {
    for (const auto& [task_name, sensors] : j.at("thresholds").items()) {
      const auto task = parse_task(task_name);
      if (!task) throw InvalidParams("policy: unknown task " + task_name);
      for (const auto& [sensor, conf] : sensors.items()) {
        p.thresholds.set(*task, sensor, conf.get<double>());
      }
    }
  }
  p.validate();
  return p;
}

inline nlohmann::ordered_json policy_to_json(const Policy& p) {
  nlohmann::ordered_json j;
  j["apps"] = nlohmann::ordered_json::object();
  for (const auto& [app, type] : p.rules.apps) j["apps"][app] = to_string(type);
  j["rules"] = nlohmann::ordered_json::array();
  for (const auto& r : p.rules.rules) {
    nlohmann::ordered_json rj;
    rj["subject"] = to_string(r.subject);
    rj["object"] = r.object;
    rj["op"] = r.op;
    rj["task"] = r.task ? nlohmann::ordered_json(to_string(*r.task)) : nullptr;
    rj["relax_label"] = r.relax_label ? nlohmann::ordered_json(to_string(*r.relax_label)) : nullptr;
    j["rules"].push_back(std::move(rj));
  }
  j["thresholds"] = nlohmann::ordered_json::object();
  for (const auto& [key, conf] : p.thresholds.values) {
    j["thresholds"][std::string(to_string(key.first))][key.second] = conf;
  }
  return j;
}

/// Trusted system apps use every sensor unconditionally; untrusted apps get
/// each sensor only in low-exposure contexts, with stricter thresholds for
/// the more revealing sensors.
inline Policy default_policy() {
  Policy p;
  p.rules.apps = {{"com.android.camera", AppType::trusted},
                  {"com.android.settings", AppType::trusted},
                  {"com.example.navigator", AppType::untrusted},
                  {"com.example.placeraider", AppType::untrusted},
                  {"com.example.fitness", AppType::untrusted}};
  const std::vector<std::pair<std::string, std::string>> access{
      {"camera", "take_picture"}, {"camera", "start_preview"}, {"accelerometer", "read"},
      {"gps", "read"},            {"magnetometer", "read"},    {"microphone", "record"}};
  for (const auto& [object, op] : access) {
    p.rules.rules.push_back({AppType::trusted, object, op, std::nullopt, std::nullopt});
    p.rules.rules.push_back(
        {AppType::untrusted, object, op, Task::exposure, ClassLabel::low_exposure});
  }
  p.thresholds.set(Task::exposure, "camera", 0.7);
  p.thresholds.set(Task::exposure, "accelerometer", 0.6);
  p.thresholds.set(Task::exposure, "gps", 0.8);
  p.thresholds.set(Task::exposure, "magnetometer", 0.5);
  p.thresholds.set(Task::exposure, "microphone", 0.7);
  p.thresholds.set(Task::misuse, std::string(kLockscreen), 0.7);
  return p;
}

inline ClassificationEvent classification_event_from_json(const nlohmann::json& j) {
  ClassificationEvent e;
  e.t = from_seconds(j.value("t", 0.0));
  const auto label = parse_class_label(j.at("label").get<std::string>());
  if (!label) throw InvalidParams("event: unknown label");
  e.label = *label;
  e.task = j.contains("task") ? parse_task(j.at("task").get<std::string>()).value_or(task_of(*label))
                              : task_of(*label);
  if (task_of(e.label) != e.task) throw InvalidParams("event: label does not match task");
  e.confidence = j.at("confidence").get<double>();
  if (!(e.confidence >= 0.0 && e.confidence <= 1.0)) {
    throw InvalidParams("event: confidence outside [0, 1]");
  }
  return e;
}

inline nlohmann::ordered_json decision_to_json(const Decision& d) {
  nlohmann::ordered_json j;
  j["decision"] = d.allow ? "allow" : "deny";
  j["reason"] = to_string(d.reason);
  return j;
}

}  // namespace conxsense
