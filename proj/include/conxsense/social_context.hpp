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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conxsense/coi.hpp"
#include "conxsense/error.hpp"
#include "conxsense/jaccard.hpp"
#include "conxsense/staypoints.hpp"
#include "conxsense/trace.hpp"

namespace conxsense {

struct ContextParams {
  Duration eps_visit = std::chrono::minutes{5};  // no published value; mirrors eps_enc
  Duration eps_enc = std::chrono::minutes{5};
  std::size_t f_min_famdev = 5;
  Duration t_min_famdev = std::chrono::minutes{30};
  double visit_jaccard_max = 0.5;

  void validate() const {
    if (eps_visit <= Duration::zero()) throw InvalidParams("eps_visit must be positive");
    if (eps_enc <= Duration::zero()) throw InvalidParams("eps_enc must be positive");
    if (f_min_famdev < 1) throw InvalidParams("f_min_famdev must be at least 1");
    if (t_min_famdev <= Duration::zero()) throw InvalidParams("t_min_famdev must be positive");
    if (!(visit_jaccard_max > 0.0 && visit_jaccard_max <= 1.0)) {
      throw InvalidParams("visit_jaccard_max must lie in (0, 1]");
    }
  }
};

enum class CoiKind { gps, wifi };

inline std::string_view to_string(CoiKind k) { return k == CoiKind::gps ? "gps" : "wifi"; }

struct Visit {
  std::string coi_id;
  CoiKind kind = CoiKind::gps;
  Timestamp t_start;
  Timestamp t_end;

  Duration duration() const { return t_end - t_start; }
  bool spans(Timestamp t) const { return t_start <= t && t <= t_end; }
};

struct Encounter {
  std::string dev;
  Timestamp t_start;
  Timestamp t_end;

  Duration duration() const { return t_end - t_start; }
  bool spans(Timestamp t) const { return t_start <= t && t <= t_end; }
};

namespace detail {

/// Chains sorted member timestamps into runs; `joins(prev, next)` decides
/// whether `next` extends the current run.
template <class Joins>
std::vector<std::pair<Timestamp, Timestamp>> chain_runs(std::span<const Timestamp> times,
                                                        Joins joins) {
  std::vector<std::pair<Timestamp, Timestamp>> runs;
  for (const Timestamp t : times) {
    if (!runs.empty() && joins(runs.back().second, t)) {
      runs.back().second = t;
    } else {
      runs.emplace_back(t, t);
    }
  }
  return runs;
}

}  // namespace detail

/// Visits to each CoI: in-rectangle GPS fixes (open interior) or WiFi
/// snapshots within visit_jaccard_max of the CoI's AP set, chained while
/// consecutive members are at most eps_visit apart. Sorted by (t_start, id).
inline std::vector<Visit> detect_visits(const ObservationSequence& seq, const CoiSet& cois,
                                        const ContextParams& p = {},
                                        const StayPointParams& sp = {}) {
  p.validate();
  const auto joins = [&](Timestamp prev, Timestamp next) { return next - prev <= p.eps_visit; };
  std::vector<Visit> out;

  const auto gps = seq.gps();
  for (const auto& coi : cois.gps) {
    std::vector<Timestamp> inside;
    for (const auto& fix : gps) {
      if (coi.bounds.contains_strictly({fix.lat, fix.lon})) inside.push_back(fix.t);
    }
    for (const auto& [a, b] : detail::chain_runs(std::span<const Timestamp>(inside), joins)) {
      out.push_back({coi.id, CoiKind::gps, a, b});
    }
  }

  const auto wifi = seq.wifi();
  const auto snaps = group_wifi_snapshots(wifi, sp);
  for (const auto& coi : cois.wifi) {
    std::vector<Timestamp> inside;
    for (const auto& snap : snaps) {
      if (jaccard_distance(coi.aps, snap.aps) <= p.visit_jaccard_max) inside.push_back(snap.t);
    }
    for (const auto& [a, b] : detail::chain_runs(std::span<const Timestamp>(inside), joins)) {
      out.push_back({coi.id, CoiKind::wifi, a, b});
    }
  }

  std::sort(out.begin(), out.end(), [](const Visit& a, const Visit& b) {
    return std::tie(a.t_start, a.coi_id) < std::tie(b.t_start, b.coi_id);
  });
  return out;
}

/// Encounters with mobile-class devices; sightings chain while strictly
/// less than eps_enc apart. Sorted by (t_start, dev).
inline std::vector<Encounter> detect_encounters(const ObservationSequence& seq,
                                                const ContextParams& p = {}) {
  p.validate();
  std::map<std::string, std::vector<Timestamp>> sightings;
  for (const auto& obs : seq.bt()) {
    if (obs.dev_class == DeviceClass::mobile) sightings[obs.dev].push_back(obs.t);
  }
  std::vector<Encounter> out;
  for (auto& [dev, times] : sightings) {
    std::sort(times.begin(), times.end());
    const auto runs = detail::chain_runs(
        std::span<const Timestamp>(times),
        [&](Timestamp prev, Timestamp next) { return next - prev < p.eps_enc; });
    for (const auto& [a, b] : runs) out.push_back({dev, a, b});
  }
  std::sort(out.begin(), out.end(), [](const Encounter& a, const Encounter& b) {
    return std::tie(a.t_start, a.dev) < std::tie(b.t_start, b.dev);
  });
  return out;
}

/// Ids of CoIs with a visit spanning t (endpoints inclusive).
inline std::set<std::string> location_context_at(Timestamp t, std::span<const Visit> visits) {
  std::set<std::string> out;
  for (const auto& v : visits) {
    if (v.spans(t)) out.insert(v.coi_id);
  }
  return out;
}

/// Devices with an encounter spanning t (endpoints inclusive).
inline std::set<std::string> device_context_at(Timestamp t, std::span<const Encounter> encs) {
  std::set<std::string> out;
  for (const auto& e : encs) {
    if (e.spans(t)) out.insert(e.dev);
  }
  return out;
}

struct CoiStats {
  CoiKind kind = CoiKind::gps;
  std::size_t visits = 0;
  Duration duration{};
};

struct CoiProfile {
  std::map<std::string, CoiStats> cois;
};

struct DeviceStats {
  std::size_t encounters = 0;
  Duration duration{};
};

struct DeviceProfile {
  std::map<std::string, DeviceStats> devices;
  std::set<std::string> familiar;

  bool is_familiar(const std::string& dev) const { return familiar.contains(dev); }
};

struct Profiles {
  CoiProfile coi;
  DeviceProfile device;
};

/// Aggregates visits per CoI and encounters per device. When `cois` is
/// given, every detected CoI appears in the profile even without visits.
inline Profiles build_profiles(std::span<const Visit> visits, std::span<const Encounter> encs,
                               const ContextParams& p = {}, const CoiSet* cois = nullptr) {
  p.validate();
  Profiles out;
  if (cois) {
    for (const auto& c : cois->gps) out.coi.cois[c.id].kind = CoiKind::gps;
    for (const auto& c : cois->wifi) out.coi.cois[c.id].kind = CoiKind::wifi;
  }
  for (const auto& v : visits) {
    auto& stats = out.coi.cois[v.coi_id];
    stats.kind = v.kind;
    ++stats.visits;
    stats.duration += v.duration();
  }
  for (const auto& e : encs) {
    auto& stats = out.device.devices[e.dev];
    ++stats.encounters;
    stats.duration += e.duration();
  }
  for (const auto& [dev, stats] : out.device.devices) {
    if (stats.encounters >= p.f_min_famdev && stats.duration >= p.t_min_famdev) {
      out.device.familiar.insert(dev);
    }
  }
  return out;
}

}  // namespace conxsense
