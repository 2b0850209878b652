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

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "conxsense/classifier/cross_validation.hpp"
#include "conxsense/classifier/model.hpp"
#include "conxsense/classifier/model_io.hpp"
#include "conxsense/classifier/roc.hpp"
#include "conxsense/config_io.hpp"
#include "conxsense/features.hpp"
#include "conxsense/profiler.hpp"
#include "conxsense/trace.hpp"

namespace conxsense {

struct TaskResult {
  Task task = Task::misuse;
  std::vector<LabeledFeatureVector> dataset;
  EvalResult eval;
  TrainedModel model;  // fitted on the whole dataset
};

struct PipelineResult {
  ContextModel context;
  std::vector<TaskResult> tasks;
};

/// Profile the trace, build one labelled dataset per task, cross-validate
/// and fit a final model on all rows of each task.
inline PipelineResult run_pipeline(const ObservationSequence& trace, const Config& config) {
  config.validate();
  PipelineResult r;
  r.context = build_context_model(trace, config.profiler);
  const auto features_at = [&](Timestamp t) {
    return config.causal_features ? causal_features_at(trace, t, config.profiler)
                                  : r.context.features_at(t);
  };
  for (const Task task : {Task::misuse, Task::exposure}) {
    TaskResult tr;
    tr.task = task;
    tr.dataset = time_ordered(build_dataset(trace, features_at, task));
    tr.eval = cross_validate(config.model, tr.dataset, config.folds);
    tr.model = train(config.model, tr.dataset);
    r.tasks.push_back(std::move(tr));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Artifacts
// ---------------------------------------------------------------------------

/// Shortest text that reads back to the same double.
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace detail {

inline nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

inline nlohmann::ordered_json latlon_json(geo::LatLon p) { return {{"lat", p.lat}, {"lon", p.lon}}; }

}  // namespace detail

inline nlohmann::ordered_json staypoints_to_json(const ContextModel& m) {
  nlohmann::ordered_json j;
  j["gps"] = nlohmann::ordered_json::array();
  for (const auto& sp : m.gps_staypoints) {
    j["gps"].push_back({{"t_start", to_seconds(sp.t_start)},
                        {"t_end", to_seconds(sp.t_end)},
                        {"duration_s", to_seconds(sp.duration())},
                        {"fixes", sp.members.size()},
                        {"centroid", detail::latlon_json(sp.centroid)}});
  }
  j["wifi"] = nlohmann::ordered_json::array();
  for (const auto& sp : m.wifi_staypoints) {
    j["wifi"].push_back({{"t_start", to_seconds(sp.t_start)},
                         {"t_end", to_seconds(sp.t_end)},
                         {"duration_s", to_seconds(sp.t_end - sp.t_start)},
                         {"snapshots", sp.snapshots.size()},
                         {"char_set", sp.char_set}});
  }
  return j;
}

/// One entry per CoI: GPS areas first, then WiFi sets. Visit counts and
/// durations come from the profile; the stay-point fields describe how the
/// CoI was formed.
inline nlohmann::ordered_json cois_to_json(const CoiSet& cois, const Profiles& profiles) {
  const auto visit_stats = [&](const std::string& id) {
    const auto it = profiles.coi.cois.find(id);
    return it == profiles.coi.cois.end() ? CoiStats{} : it->second;
  };
  auto j = nlohmann::ordered_json::array();
  for (const auto& c : cois.gps) {
    const auto v = visit_stats(c.id);
    j.push_back({{"id", c.id},
                 {"kind", "gps"},
                 {"bounds",
                  {{"lat_min", c.bounds.lat_min},
                   {"lon_min", c.bounds.lon_min},
                   {"lat_max", c.bounds.lat_max},
                   {"lon_max", c.bounds.lon_max}}},
                 {"visits", v.visits},
                 {"dur_s", to_seconds(v.duration)},
                 {"staypoints", c.member_staypoints},
                 {"staypoint_dur_s", to_seconds(c.total_duration)}});
  }
  for (const auto& c : cois.wifi) {
    const auto v = visit_stats(c.id);
    j.push_back({{"id", c.id},
                 {"kind", "wifi"},
                 {"aps", c.aps},
                 {"visits", v.visits},
                 {"dur_s", to_seconds(v.duration)},
                 {"staypoints", c.member_staypoints},
                 {"staypoint_dur_s", to_seconds(c.total_duration)}});
  }
  return j;
}

inline nlohmann::ordered_json profiles_to_json(const Profiles& p) {
  nlohmann::ordered_json j;
  j["cois"] = nlohmann::ordered_json::object();
  for (const auto& [id, s] : p.coi.cois) {
    j["cois"][id] = {{"visits", s.visits}, {"dur_s", to_seconds(s.duration)}};
  }
  j["devices"] = nlohmann::ordered_json::object();
  for (const auto& [dev, s] : p.device.devices) {
    j["devices"][dev] = {{"enc", s.encounters},
                         {"dur_s", to_seconds(s.duration)},
                         {"familiar", p.device.is_familiar(dev)}};
  }
  return j;
}

inline std::string features_csv_header() {
  std::string h = "t";
  for (auto name : kFeatureNames) h += "," + std::string(name);
  return h + ",task,label\n";
}

inline std::string features_csv_row(const LabeledFeatureVector& row) {
  std::string s = format_number(to_seconds(row.fv.t));
  for (double v : row.fv.f) s += "," + format_number(v);
  s += ",";
  s += to_string(row.task);
  s += ",";
  s += to_string(row.label);
  return s + "\n";
}

inline std::string roc_csv(const RocCurve& curve) {
  std::string s = "threshold,fpr,tpr\n";
  for (const auto& p : curve.points) {
    s += format_number(p.threshold) + "," + format_number(p.fpr) + "," + format_number(p.tpr) + "\n";
  }
  return s;
}

inline nlohmann::ordered_json summary_to_json(const TaskResult& tr, const Config& config) {
  const auto& e = tr.eval;
  nlohmann::ordered_json j;
  j["task"] = to_string(tr.task);
  j["model"] = to_string(config.model.kind);
  j["positive_label"] = to_string(relax_label(tr.task));
  j["examples"] = tr.dataset.size();
  j["positives"] = e.pooled_roc.positives;
  j["negatives"] = e.pooled_roc.negatives;
  j["folds"] = e.folds;
  j["warnings"] = e.warnings;
  j["auc"] = e.pooled_roc.auc;
  j["mean_fold_auc"] = e.mean_fold_auc();
  j["operating_points"] = nlohmann::ordered_json::array();
  for (double target : config.target_fprs) {
    const auto op = operating_point(e.pooled_roc, target);
    j["operating_points"].push_back({{"target_fpr", target},
                                     {"threshold", detail::number_or_null(op.point.threshold)},
                                     {"fpr", op.point.fpr},
                                     {"tpr", op.point.tpr},
                                     {"tp", op.confusion.tp},
                                     {"fp", op.confusion.fp},
                                     {"tn", op.confusion.tn},
                                     {"fn", op.confusion.fn}});
  }
  const auto& c = e.pooled_confusion;
  j["confusion_at_default_threshold"] = {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}};
  return j;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

inline std::string dump_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

/// Writes every intermediate and final artifact of a pipeline run. Returns
/// the file names written, in order.
inline std::vector<std::string> write_artifacts(const PipelineResult& r, const Config& config,
                                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  const auto emit = [&](const std::string& name, const std::string& text) {
    write_text(dir / name, text);
    written.push_back(name);
  };
  emit("config.json", dump_json(config_to_json(config)));
  emit("staypoints.json", dump_json(staypoints_to_json(r.context)));
  emit("cois.json", dump_json(cois_to_json(r.context.cois, r.context.profiles)));
  emit("profiles.json", dump_json(profiles_to_json(r.context.profiles)));
  std::string csv = features_csv_header();
  for (const auto& tr : r.tasks) {
    for (const auto& row : tr.dataset) csv += features_csv_row(row);
  }
  emit("features.csv", csv);
  for (const auto& tr : r.tasks) {
    const std::string task(to_string(tr.task));
    emit("model_" + task + ".json", dump_json(model_to_json(tr.model)));
    emit("roc_" + task + ".csv", roc_csv(tr.eval.pooled_roc));
    emit("summary_" + task + ".json", dump_json(summary_to_json(tr, config)));
  }
  return written;
}

}  // namespace conxsense
