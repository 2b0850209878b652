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
#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "conxsense/classifier/model.hpp"
#include "conxsense/features.hpp"
#include "conxsense/policy.hpp"
#include "conxsense/policy_io.hpp"
#include "conxsense/profiler.hpp"
#include "conxsense/random.hpp"
#include "conxsense/scenario.hpp"

namespace conxsense {

// ---------------------------------------------------------------------------
// Enforcement script: ground-truth context changes, device wakes, reboots
// and app sensor requests over the simulated period.
// ---------------------------------------------------------------------------

struct GroundTruth {
  MisuseLabel misuse = MisuseLabel::unsafe;
  ExposureLabel exposure = ExposureLabel::home;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

enum class ScriptEventKind { context, wake, reboot, access };

struct ScriptEvent {
  Timestamp t;
  ScriptEventKind kind = ScriptEventKind::wake;
  GroundTruth truth;  // context events only
  std::string app;    // access events only
  std::string sensor;
  std::string op;
};

inline std::string_view to_string(ScriptEventKind k) {
  switch (k) {
    case ScriptEventKind::context: return "context";
    case ScriptEventKind::wake: return "wake";
    case ScriptEventKind::reboot: return "reboot";
    case ScriptEventKind::access: return "access";
  }
  return "wake";
}

inline GroundTruth truth_of(const ScenarioConfig& cfg, const Segment& s) {
  if (s.transit()) return {MisuseLabel::unsafe, ExposureLabel::public_place};
  const Place& p = cfg.places[*s.place];
  return {p.misuse, p.exposure};
}

/// Wakes arrive during waking hours, reboots on roughly one day in four, and
/// the untrusted apps poll their sensors around the clock.
inline std::vector<ScriptEvent> generate_enforcement_script(const ScenarioConfig& cfg) {
  using namespace std::chrono_literals;
  const auto timeline = build_timeline(cfg);
  Rng rng(cfg.seed ^ 0x5eedf00dcafe1234ULL);
  std::vector<ScriptEvent> out;

  std::optional<GroundTruth> current;
  for (const auto& s : timeline) {
    const auto truth = truth_of(cfg, s);
    if (truth != current) out.push_back({s.t_start, ScriptEventKind::context, truth, {}, {}, {}});
    current = truth;
  }

  const Timestamp end = timeline.back().t_end;
  const auto poisson = [&](double mean_min, auto&& emit) {
    Timestamp t = cfg.start + seconds(rng.exponential(mean_min * 60.0));
    while (t < end) {
      emit(t);
      t += seconds(std::max(1.0, std::round(rng.exponential(mean_min * 60.0))));
    }
  };
  const auto daytime = [&](Timestamp t) {
    const auto since_midnight = (t - cfg.start) % std::chrono::days{1};
    return since_midnight >= 7h && since_midnight < 23h;
  };

  poisson(40.0, [&](Timestamp t) {
    if (daytime(t)) out.push_back({t, ScriptEventKind::wake, {}, {}, {}, {}});
  });
  for (int day = 0; day < cfg.days; ++day) {
    if (rng.bernoulli(0.25)) {
      const Timestamp t = cfg.start + std::chrono::days{day} + 7h + seconds(rng.uniform(0.0, 16.0 * 3600.0));
      out.push_back({from_seconds(std::round(to_seconds(t))), ScriptEventKind::reboot, {}, {}, {}, {}});
    }
  }
  const auto access = [&](double mean_min, std::string app, std::string sensor, std::string op) {
    poisson(mean_min, [&](Timestamp t) {
      out.push_back({t, ScriptEventKind::access, {}, app, sensor, op});
    });
  };
  access(20.0, "com.example.placeraider", "camera", "take_picture");
  access(20.0, "com.example.placeraider", "accelerometer", "read");
  access(30.0, "com.example.navigator", "gps", "read");
  access(45.0, "com.example.fitness", "accelerometer", "read");
  access(60.0, "com.example.fitness", "microphone", "record");
  access(120.0, "com.android.camera", "camera", "take_picture");

  std::stable_sort(out.begin(), out.end(), [](const ScriptEvent& a, const ScriptEvent& b) {
    return a.t < b.t || (a.t == b.t && a.kind < b.kind);
  });
  return out;
}

inline nlohmann::ordered_json script_event_to_json(const ScriptEvent& e) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(e.kind);
  j["t"] = to_seconds(e.t);
  if (e.kind == ScriptEventKind::context) {
    j["misuse"] = to_string(e.truth.misuse);
    j["exposure"] = to_string(e.truth.exposure);
  } else if (e.kind == ScriptEventKind::access) {
    j["app"] = e.app;
    j["sensor"] = e.sensor;
    j["op"] = e.op;
  }
  return j;
}

inline std::string serialize_script(const std::vector<ScriptEvent>& events) {
  std::string out;
  for (const auto& e : events) out += script_event_to_json(e).dump() + "\n";
  return out;
}

inline std::vector<ScriptEvent> parse_script(std::istream& in) {
  std::vector<ScriptEvent> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      ScriptEvent e;
      e.t = from_seconds(j.at("t").get<double>());
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "context") {
        e.kind = ScriptEventKind::context;
        const auto m = parse_misuse(j.at("misuse").get<std::string>());
        const auto x = parse_exposure(j.at("exposure").get<std::string>());
        if (!m || !x) throw std::invalid_argument("bad context labels");
        e.truth = {*m, *x};
      } else if (kind == "wake") {
        e.kind = ScriptEventKind::wake;
      } else if (kind == "reboot") {
        e.kind = ScriptEventKind::reboot;
      } else if (kind == "access") {
        e.kind = ScriptEventKind::access;
        e.app = j.at("app").get<std::string>();
        e.sensor = j.at("sensor").get<std::string>();
        e.op = j.at("op").get<std::string>();
      } else {
        throw std::invalid_argument("unknown kind '" + kind + "'");
      }
      out.push_back(std::move(e));
    } catch (const std::exception& ex) {
      throw MalformedRecord(line_no, ex.what());
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ScriptEvent& a, const ScriptEvent& b) { return a.t < b.t; });
  return out;
}

// ---------------------------------------------------------------------------
// Context classifiers used during replay
// ---------------------------------------------------------------------------

/// Produces the classification for `task` at time `t`. The ground truth is
/// passed along for oracle and degenerate classifiers; real ones ignore it.
using ContextClassifier =
    std::function<ClassificationEvent(Timestamp t, Task task, const GroundTruth& truth)>;

inline ContextClassifier oracle_classifier() {
  return [](Timestamp t, Task task, const GroundTruth& truth) {
    const ClassLabel label =
        task == Task::misuse ? to_class_label(truth.misuse) : to_class_label(truth.exposure);
    return ClassificationEvent{t, task, label, 1.0};
  };
}

inline ContextClassifier always_deny_classifier() {
  return [](Timestamp t, Task task, const GroundTruth&) {
    return ClassificationEvent{t, task, restrict_label(task), 1.0};
  };
}

/// Classifies from the profiler's features with one trained model per task.
inline ContextClassifier model_classifier(std::shared_ptr<const ContextModel> context,
                                          std::shared_ptr<const TrainedModel> misuse,
                                          std::shared_ptr<const TrainedModel> exposure) {
  return [context, misuse, exposure](Timestamp t, Task task, const GroundTruth&) {
    const auto& model = task == Task::misuse ? *misuse : *exposure;
    const Prediction p = predict(model, context->features_at(t));
    return ClassificationEvent{t, task, p.label, p.confidence};
  };
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

struct LatencyStats {
  std::size_t samples = 0;
  double mean_ms = 0.0;
  double stddev_ms = 0.0;
  double p95_ms = 0.0;
  double max_ms = 0.0;
};

inline LatencyStats latency_stats(std::vector<double> ms) {
  LatencyStats s;
  s.samples = ms.size();
  if (ms.empty()) return s;
  double sum = 0.0;
  for (double v : ms) sum += v;
  s.mean_ms = sum / static_cast<double>(ms.size());
  double ss = 0.0;
  for (double v : ms) ss += (v - s.mean_ms) * (v - s.mean_ms);
  s.stddev_ms = std::sqrt(ss / static_cast<double>(ms.size()));
  std::sort(ms.begin(), ms.end());
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(ms.size())));
  s.p95_ms = ms[std::max<std::size_t>(rank, 1) - 1];
  s.max_ms = ms.back();
  return s;
}

struct ReplayOptions {
  Duration cadence = std::chrono::seconds{60};        // classification period
  Duration unlock_delay = std::chrono::seconds{10};   // user authenticates after a prompt
  bool refresh_on_context_change = true;  // reclassify when the sensed context changes
};

struct EnforcementReport {
  std::size_t wakes = 0;
  std::size_t low_risk_wakes = 0;
  std::size_t low_risk_prompts_avoided = 0;
  std::size_t high_risk_wakes = 0;
  std::size_t high_risk_unlocked = 0;
  std::size_t reboots = 0;
  std::size_t accesses = 0;
  std::size_t allowed = 0;
  std::size_t untrusted_high_exposure_allowed = 0;  // sensor data leaked
  std::map<std::string, std::size_t> reasons;
  LatencyStats latency;

  double prompts_avoided_fraction() const {
    return low_risk_wakes ? static_cast<double>(low_risk_prompts_avoided) /
                                static_cast<double>(low_risk_wakes)
                          : 0.0;
  }
  double high_risk_unlocked_fraction() const {
    return high_risk_wakes ? static_cast<double>(high_risk_unlocked) /
                                 static_cast<double>(high_risk_wakes)
                           : 0.0;
  }
};

/// Replays a script against the policy. The classifier runs every
/// `cadence` and on context changes (misuse results feed the lockscreen,
/// exposure results the rules); a displayed lockscreen on wake counts as an authentication prompt
/// and is followed by a manual unlock after `unlock_delay`.
inline EnforcementReport replay_enforcement(const std::vector<ScriptEvent>& script,
                                            const ContextClassifier& classify,
                                            const Policy& policy, const ReplayOptions& opt = {}) {
  policy.validate();
  EnforcementReport report;
  if (script.empty()) return report;

  const double dismiss = policy.lockscreen_threshold();
  LockState lock;
  ClassificationState state;
  GroundTruth truth;
  std::optional<Timestamp> pending_unlock;
  std::vector<double> latencies;

  const auto cadence_floor = [&](Timestamp t) {
    const auto n = t.time_since_epoch() / opt.cadence;
    return Timestamp{opt.cadence * n};
  };
  Timestamp next_tick = cadence_floor(script.front().t);

  const auto classify_at = [&](Timestamp tick) {
    for (const Task task : {Task::misuse, Task::exposure}) {
      const auto e = classify(tick, task, truth);
      state.update(e);
      if (task == Task::misuse) {
        lock = update_lock_state(lock, LockEvent::risk(e.label, e.confidence), dismiss);
      }
    }
  };

  for (const auto& ev : script) {
    const auto run_ticks = [&](auto&& due) {
      while (due(next_tick)) {
        if (pending_unlock && *pending_unlock <= next_tick) {
          lock = update_lock_state(lock, LockEvent::manual_unlock(), dismiss);
          pending_unlock.reset();
        }
        classify_at(next_tick);
        next_tick += opt.cadence;
      }
    };
    // Truth changes take effect before a tick at the same instant.
    run_ticks([&](Timestamp tick) { return tick < ev.t; });
    if (ev.kind == ScriptEventKind::context) {
      truth = ev.truth;
      if (opt.refresh_on_context_change) classify_at(ev.t);
    }
    run_ticks([&](Timestamp tick) { return tick <= ev.t; });
    if (pending_unlock && *pending_unlock <= ev.t) {
      lock = update_lock_state(lock, LockEvent::manual_unlock(), dismiss);
      pending_unlock.reset();
    }

    switch (ev.kind) {
      case ScriptEventKind::context:
        break;
      case ScriptEventKind::reboot:
        ++report.reboots;
        lock = update_lock_state(lock, LockEvent::reboot(), dismiss);
        pending_unlock.reset();
        break;
      case ScriptEventKind::wake: {
        ++report.wakes;
        lock = update_lock_state(lock, LockEvent::wake(), dismiss);
        if (truth.misuse == MisuseLabel::safe) {
          ++report.low_risk_wakes;
          if (!lock.displayed) ++report.low_risk_prompts_avoided;
        } else {
          ++report.high_risk_wakes;
          if (!lock.displayed) ++report.high_risk_unlocked;
        }
        if (lock.displayed && !pending_unlock) pending_unlock = ev.t + opt.unlock_delay;
        break;
      }
      case ScriptEventKind::access: {
        ++report.accesses;
        const auto t0 = std::chrono::steady_clock::now();
        const Decision d =
            decide_access(ev.app, ev.sensor, ev.op, state, policy.rules, policy.thresholds, lock);
        const auto t1 = std::chrono::steady_clock::now();
        latencies.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        ++report.reasons[std::string(to_string(d.reason))];
        if (d.allow) {
          ++report.allowed;
          if (policy.rules.type_of(ev.app) == AppType::untrusted &&
              truth.exposure != ExposureLabel::public_place) {
            ++report.untrusted_high_exposure_allowed;
          }
        }
        break;
      }
    }
  }
  report.latency = latency_stats(std::move(latencies));
  return report;
}

inline nlohmann::ordered_json report_to_json(const EnforcementReport& r) {
  nlohmann::ordered_json j;
  j["wakes"] = r.wakes;
  j["low_risk_wakes"] = r.low_risk_wakes;
  j["low_risk_prompts_avoided"] = r.low_risk_prompts_avoided;
  j["prompts_avoided_fraction"] = r.prompts_avoided_fraction();
  j["high_risk_wakes"] = r.high_risk_wakes;
  j["high_risk_unlocked"] = r.high_risk_unlocked;
  j["high_risk_unlocked_fraction"] = r.high_risk_unlocked_fraction();
  j["reboots"] = r.reboots;
  j["accesses"] = r.accesses;
  j["allowed"] = r.allowed;
  j["untrusted_high_exposure_allowed"] = r.untrusted_high_exposure_allowed;
  j["reasons"] = r.reasons;
  j["latency_ms"] = {{"samples", r.latency.samples},
                     {"mean", r.latency.mean_ms},
                     {"stddev", r.latency.stddev_ms},
                     {"p95", r.latency.p95_ms},
                     {"max", r.latency.max_ms}};
  return j;
}

}  // namespace conxsense
