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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "conxsense/error.hpp"
#include "conxsense/features.hpp"
#include "conxsense/time.hpp"

namespace conxsense {

enum class AppType { trusted, untrusted };

inline std::string_view to_string(AppType t) {
  return t == AppType::trusted ? "trusted" : "untrusted";
}

inline std::optional<AppType> parse_app_type(std::string_view s) {
  if (s == "trusted") return AppType::trusted;
  if (s == "untrusted") return AppType::untrusted;
  return std::nullopt;
}

/// Sensor blocked for untrusted apps whenever the lockscreen is displayed.
inline constexpr std::string_view kAccelerometer = "accelerometer";
/// Pseudo-sensor holding the misuse-task confidence needed to auto-dismiss
/// the lockscreen.
inline constexpr std::string_view kLockscreen = "lockscreen";

/// Allows (subject type, object, operation). A conditional rule is active
/// only while the latest classification for `task` is `relax_label`.
struct Rule {
  AppType subject = AppType::untrusted;
  std::string object;
  std::string op;
  std::optional<Task> task;
  std::optional<ClassLabel> relax_label;

  bool conditional() const { return task.has_value(); }
};

struct RuleTable {
  std::map<std::string, AppType> apps;
  std::vector<Rule> rules;

  /// Apps without an assignment are treated as untrusted.
  AppType type_of(const std::string& app) const {
    const auto it = apps.find(app);
    return it == apps.end() ? AppType::untrusted : it->second;
  }

  const Rule* find(AppType subject, std::string_view object, std::string_view op) const {
    for (const auto& r : rules) {
      if (r.subject == subject && r.object == object && r.op == op) return &r;
    }
    return nullptr;
  }

  std::set<std::string> objects() const {
    std::set<std::string> out;
    for (const auto& r : rules) out.insert(r.object);
    return out;
  }

  std::set<std::string> operations() const {
    std::set<std::string> out;
    for (const auto& r : rules) out.insert(r.op);
    return out;
  }

  void validate() const {
    std::set<std::tuple<AppType, std::string, std::string>> seen;
    for (const auto& r : rules) {
      if (!seen.emplace(r.subject, r.object, r.op).second) {
        throw InvalidParams("duplicate rule for (" + std::string(to_string(r.subject)) + ", " +
                            r.object + ", " + r.op + ")");
      }
      if (r.task.has_value() != r.relax_label.has_value()) {
        throw InvalidParams("rule for " + r.object + " needs both task and relax_label");
      }
      if (r.task && task_of(*r.relax_label) != *r.task) {
        throw InvalidParams("relax_label does not belong to the rule's task");
      }
    }
  }
};

/// Minimum classification confidence per (task, sensor).
struct Thresholds {
  std::map<std::pair<Task, std::string>, double> values;

  std::optional<double> get(Task task, std::string_view sensor) const {
    const auto it = values.find({task, std::string(sensor)});
    if (it == values.end()) return std::nullopt;
    return it->second;
  }

  void set(Task task, std::string sensor, double conf) {
    values[{task, std::move(sensor)}] = conf;
  }

  bool mentions(std::string_view sensor) const {
    for (const auto& [key, v] : values) {
      if (key.second == sensor) return true;
    }
    return false;
  }

  void validate(const RuleTable& rules) const {
    for (const auto& [key, v] : values) {
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidParams("threshold outside [0, 1]");
    }
    for (const auto& r : rules.rules) {
      if (r.task && !get(*r.task, r.object)) {
        throw UnknownSensor(std::string(to_string(*r.task)), r.object);
      }
    }
  }
};

struct ClassificationEvent {
  Timestamp t;
  Task task = Task::misuse;
  ClassLabel label = ClassLabel::high_risk;
  double confidence = 0.0;
};

/// Latest classification per task as seen by the access control layer.
struct ClassificationState {
  std::optional<ClassificationEvent> misuse;
  std::optional<ClassificationEvent> exposure;

  const std::optional<ClassificationEvent>& get(Task t) const {
    return t == Task::misuse ? misuse : exposure;
  }

  void update(const ClassificationEvent& e) {
    (e.task == Task::misuse ? misuse : exposure) = e;
  }
};

/// Lockscreen state. A fresh boot starts latched.
struct LockState {
  bool displayed = true;
  bool watermark = true;  // lockscreen mandatory until manual authentication
  std::optional<ClassLabel> last_risk;
  double last_confidence = 0.0;

  friend bool operator==(const LockState&, const LockState&) = default;
};

enum class DecisionReason {
  allowed,
  allowed_unconditional,
  no_rule,
  wrong_label,
  low_confidence,
  lockscreen_block,
};

inline std::string_view to_string(DecisionReason r) {
  switch (r) {
    case DecisionReason::allowed: return "allowed";
    case DecisionReason::allowed_unconditional: return "allowed_unconditional";
    case DecisionReason::no_rule: return "no_rule";
    case DecisionReason::wrong_label: return "wrong_label";
    case DecisionReason::low_confidence: return "low_confidence";
    case DecisionReason::lockscreen_block: return "lockscreen_block";
  }
  return "no_rule";
}

struct Decision {
  bool allow = false;
  DecisionReason reason = DecisionReason::no_rule;

  friend bool operator==(const Decision&, const Decision&) = default;
};

/// Default-deny access decision. Allows only when a rule matches, the rule's
/// condition (if any) holds at the configured confidence, and the request is
/// not an untrusted accelerometer read behind a displayed lockscreen.
/// Throws UnknownSensor for a sensor the policy never mentions, or when an
/// active conditional rule lacks a threshold.
inline Decision decide_access(const std::string& app, const std::string& sensor,
                              const std::string& op, const ClassificationState& state,
                              const RuleTable& rules, const Thresholds& thresholds,
                              const LockState& lock) {
  const AppType subject = rules.type_of(app);
  const Rule* rule = rules.find(subject, sensor, op);
  if (!rule) {
    const bool known = thresholds.mentions(sensor) || rules.objects().contains(sensor);
    if (!known) throw UnknownSensor("*", sensor);
    return {false, DecisionReason::no_rule};
  }
  if (subject == AppType::untrusted && sensor == kAccelerometer && lock.displayed) {
    return {false, DecisionReason::lockscreen_block};
  }
  if (!rule->conditional()) return {true, DecisionReason::allowed_unconditional};

  const auto threshold = thresholds.get(*rule->task, sensor);
  if (!threshold) throw UnknownSensor(std::string(to_string(*rule->task)), sensor);
  const auto& event = state.get(*rule->task);
  if (!event || event->label != *rule->relax_label) return {false, DecisionReason::wrong_label};
  if (event->confidence < *threshold) return {false, DecisionReason::low_confidence};
  return {true, DecisionReason::allowed};
}

inline Decision decide_access(const std::string& app, const std::string& sensor,
                              const std::string& op, const ClassificationEvent& event,
                              const RuleTable& rules, const Thresholds& thresholds,
                              const LockState& lock) {
  ClassificationState state;
  state.update(event);
  return decide_access(app, sensor, op, state, rules, thresholds, lock);
}

enum class LockEventKind { risk_classified, wake, reboot, manual_unlock };

struct LockEvent {
  LockEventKind kind = LockEventKind::wake;
  ClassLabel label = ClassLabel::high_risk;  // risk_classified only
  double confidence = 0.0;

  static LockEvent risk(ClassLabel label, double confidence) {
    return {LockEventKind::risk_classified, label, confidence};
  }
  static LockEvent wake() { return {LockEventKind::wake}; }
  static LockEvent reboot() { return {LockEventKind::reboot}; }
  static LockEvent manual_unlock() { return {LockEventKind::manual_unlock}; }
};

/// Low-watermark lockscreen. Reboot or any high-risk classification latches
/// the watermark, and only manual_unlock clears it. A wake auto-dismisses
/// the lockscreen only when unlatched and the last misuse classification is
/// low risk at or above `dismiss_threshold`.
inline LockState update_lock_state(LockState lock, const LockEvent& event,
                                   double dismiss_threshold) {
  switch (event.kind) {
    case LockEventKind::reboot:
      lock.watermark = true;
      lock.displayed = true;
      break;
    case LockEventKind::risk_classified:
      lock.last_risk = event.label;
      lock.last_confidence = event.confidence;
      if (event.label == ClassLabel::high_risk) lock.watermark = true;
      break;
    case LockEventKind::manual_unlock:
      lock.watermark = false;
      lock.displayed = false;
      break;
    case LockEventKind::wake:
      lock.displayed = !(!lock.watermark && lock.last_risk == ClassLabel::low_risk &&
                         lock.last_confidence >= dismiss_threshold);
      break;
  }
  return lock;
}

}  // namespace conxsense
