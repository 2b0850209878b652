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

#include <vector>

#include "conxsense/coi.hpp"
#include "conxsense/features.hpp"
#include "conxsense/social_context.hpp"
#include "conxsense/staypoints.hpp"
#include "conxsense/trace.hpp"

namespace conxsense {

struct ProfilerParams {
  StayPointParams staypoints;
  CoiParams coi;
  ContextParams context;

  void validate() const {
    staypoints.validate();
    coi.validate();
    context.validate();
  }
};

/// Everything the profiler derives from one trace: stay points, CoIs,
/// visits, encounters and the aggregated profiles.
struct ContextModel {
  std::vector<GpsStayPoint> gps_staypoints;
  std::vector<WifiSnapshot> wifi_snapshots;
  std::vector<WifiStayPoint> wifi_staypoints;
  CoiSet cois;
  std::vector<Visit> visits;
  std::vector<Encounter> encounters;
  Profiles profiles;

  FeatureVector features_at(Timestamp t) const {
    return compute_features(t, profiles, location_context_at(t, visits),
                            device_context_at(t, encounters));
  }
};

inline ContextModel build_context_model(const ObservationSequence& seq,
                                        const ProfilerParams& p = {}) {
  p.validate();
  ContextModel m;
  const auto gps = seq.gps();
  const auto wifi = seq.wifi();
  m.gps_staypoints = extract_gps_staypoints(gps, p.staypoints);
  m.wifi_snapshots = group_wifi_snapshots(wifi, p.staypoints);
  m.wifi_staypoints = extract_wifi_staypoints(m.wifi_snapshots, p.staypoints);
  m.cois.gps = detect_gps_cois(m.gps_staypoints, p.coi);
  m.cois.wifi = detect_wifi_cois(m.wifi_staypoints, p.coi);
  m.visits = detect_visits(seq, m.cois, p.context, p.staypoints);
  m.encounters = detect_encounters(seq, p.context);
  m.profiles = build_profiles(m.visits, m.encounters, p.context, &m.cois);
  return m;
}

/// Causal features: profiles come only from records strictly before `t`;
/// the contexts at `t` are evaluated against those same CoIs using the
/// records up to and including `t`.
inline FeatureVector causal_features_at(const ObservationSequence& seq, Timestamp t,
                                        const ProfilerParams& p = {}) {
  const ContextModel past = build_context_model(seq.before(t), p);
  const ObservationSequence upto = seq.until(t);
  const auto visits = detect_visits(upto, past.cois, p.context, p.staypoints);
  const auto encs = detect_encounters(upto, p.context);
  return compute_features(t, past.profiles, location_context_at(t, visits),
                          device_context_at(t, encs));
}

}  // namespace conxsense
