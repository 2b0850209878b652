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
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "conxsense/error.hpp"
#include "conxsense/social_context.hpp"
#include "conxsense/time.hpp"
#include "conxsense/trace.hpp"

namespace conxsense {

inline constexpr std::size_t kFeatureCount = 8;
using FeatureArray = std::array<double, kFeatureCount>;

/// Column order of every feature vector, CSV file and model.
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames{
    "gps_max_dur", "gps_max_dur_visits", "wifi_max_dur",     "wifi_max_dur_visits",
    "bt_num",      "bt_fam",             "bt_fam_avg_time", "bt_fam_avg_freq"};

enum FeatureIndex : std::size_t {
  kGpsMaxDur = 0,
  kGpsMaxDurVisits,
  kWifiMaxDur,
  kWifiMaxDurVisits,
  kBtNum,
  kBtFam,
  kBtFamAvgTime,
  kBtFamAvgFreq,
};

struct FeatureVector {
  Timestamp t;
  FeatureArray f{};

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

enum class Task { misuse, exposure };

/// Binary class per task. The "relax" classes (low_risk, low_exposure) are
/// the positive class throughout: predicting them lifts a protection.
enum class ClassLabel { low_risk, high_risk, low_exposure, high_exposure };

inline std::string_view to_string(Task t) { return t == Task::misuse ? "misuse" : "exposure"; }

inline std::string_view to_string(ClassLabel l) {
  switch (l) {
    case ClassLabel::low_risk: return "low_risk";
    case ClassLabel::high_risk: return "high_risk";
    case ClassLabel::low_exposure: return "low_exposure";
    case ClassLabel::high_exposure: return "high_exposure";
  }
  return "high_risk";
}

inline std::optional<Task> parse_task(std::string_view s) {
  if (s == "misuse") return Task::misuse;
  if (s == "exposure") return Task::exposure;
  return std::nullopt;
}

inline std::optional<ClassLabel> parse_class_label(std::string_view s) {
  if (s == "low_risk") return ClassLabel::low_risk;
  if (s == "high_risk") return ClassLabel::high_risk;
  if (s == "low_exposure") return ClassLabel::low_exposure;
  if (s == "high_exposure") return ClassLabel::high_exposure;
  return std::nullopt;
}

inline Task task_of(ClassLabel l) {
  return (l == ClassLabel::low_risk || l == ClassLabel::high_risk) ? Task::misuse
                                                                   : Task::exposure;
}

inline bool is_relax(ClassLabel l) {
  return l == ClassLabel::low_risk || l == ClassLabel::low_exposure;
}

inline ClassLabel relax_label(Task t) {
  return t == Task::misuse ? ClassLabel::low_risk : ClassLabel::low_exposure;
}

inline ClassLabel restrict_label(Task t) {
  return t == Task::misuse ? ClassLabel::high_risk : ClassLabel::high_exposure;
}

inline ClassLabel to_class_label(MisuseLabel m) {
  return m == MisuseLabel::safe ? ClassLabel::low_risk : ClassLabel::high_risk;
}

/// Home and work are private or confidential; only public is low exposure.
inline ClassLabel to_class_label(ExposureLabel e) {
  return e == ExposureLabel::public_place ? ClassLabel::low_exposure
                                          : ClassLabel::high_exposure;
}

struct LabeledFeatureVector {
  FeatureVector fv;
  Task task = Task::misuse;
  ClassLabel label = ClassLabel::high_risk;

  bool positive() const { return is_relax(label); }
};

/// The eight context features at `t` from the profiles and the contexts
/// observed at `t`. Argmax ties over equal dur_C go to the smallest CoI id.
inline FeatureVector compute_features(Timestamp t, const Profiles& profiles,
                                      const std::set<std::string>& loc_ctx,
                                      const std::set<std::string>& dev_ctx) {
  FeatureVector fv{t, {}};

  for (const CoiKind kind : {CoiKind::gps, CoiKind::wifi}) {
    const CoiStats* best = nullptr;
    for (const auto& id : loc_ctx) {  // ascending ids
      const auto it = profiles.coi.cois.find(id);
      if (it == profiles.coi.cois.end() || it->second.kind != kind) continue;
      if (!best || it->second.duration > best->duration) best = &it->second;
    }
    if (best) {
      const std::size_t base = kind == CoiKind::gps ? kGpsMaxDur : kWifiMaxDur;
      fv.f[base] = to_seconds(best->duration);
      fv.f[base + 1] = static_cast<double>(best->visits);
    }
  }

  fv.f[kBtNum] = static_cast<double>(dev_ctx.size());
  std::size_t familiar = 0;
  Duration dur_sum{};
  std::size_t enc_sum = 0;
  for (const auto& dev : dev_ctx) {
    if (!profiles.device.is_familiar(dev)) continue;
    const auto& stats = profiles.device.devices.at(dev);
    ++familiar;
    dur_sum += stats.duration;
    enc_sum += stats.encounters;
  }
  fv.f[kBtFam] = static_cast<double>(familiar);
  if (familiar > 0) {
    fv.f[kBtFamAvgTime] = to_seconds(dur_sum) / static_cast<double>(familiar);
    fv.f[kBtFamAvgFreq] = static_cast<double>(enc_sum) / static_cast<double>(familiar);
  }
  return fv;
}

/// One labeled vector per feedback record carrying a label for `task`.
template <class FeaturesAt>
std::vector<LabeledFeatureVector> build_dataset(const ObservationSequence& seq,
                                                FeaturesAt&& features_at, Task task) {
  std::vector<LabeledFeatureVector> out;
  for (const auto& fb : seq.feedback()) {
    std::optional<ClassLabel> label;
    if (task == Task::misuse && fb.misuse) label = to_class_label(*fb.misuse);
    if (task == Task::exposure && fb.exposure) label = to_class_label(*fb.exposure);
    if (!label) continue;
    out.push_back({features_at(fb.t), task, *label});
  }
  if (out.empty()) throw NoFeedback(std::string(to_string(task)));
  return out;
}

}  // namespace conxsense
