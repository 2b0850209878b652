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
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "conxsense/error.hpp"
#include "conxsense/geo.hpp"
#include "conxsense/jaccard.hpp"
#include "conxsense/time.hpp"
#include "conxsense/trace.hpp"

namespace conxsense {

using ApSet = std::set<std::string>;

/// Segmentation thresholds shared by GPS and WiFi stay points.
struct StayPointParams {
  double r_sp_m = 100.0;                       // radius around the first fix
  Duration t_min_sp = std::chrono::minutes{10};
  Duration t_gap_sp = std::chrono::minutes{5};
  Duration t_max_wifi = std::chrono::seconds{10};  // one scan window
  double jaccard_max = 0.5;

  void validate() const {
    if (!(r_sp_m > 0.0)) throw InvalidParams("r_sp must be positive");
    if (t_min_sp <= Duration::zero()) throw InvalidParams("t_min_sp must be positive");
    if (t_gap_sp <= Duration::zero()) throw InvalidParams("t_gap_sp must be positive");
    if (t_max_wifi <= Duration::zero()) throw InvalidParams("t_max_wifi must be positive");
    if (!(jaccard_max > 0.0 && jaccard_max <= 1.0)) {
      throw InvalidParams("jaccard_max must lie in (0, 1]");
    }
  }
};

struct GpsStayPoint {
  std::vector<GpsObservation> members;
  Timestamp t_start;
  Timestamp t_end;
  geo::LatLon centroid;

  Duration duration() const { return t_end - t_start; }
};

struct WifiSnapshot {
  Timestamp t;
  ApSet aps;

  friend bool operator==(const WifiSnapshot&, const WifiSnapshot&) = default;
};

struct WifiStayPoint {
  std::vector<WifiSnapshot> snapshots;
  Timestamp t_start;
  Timestamp t_end;
  ApSet char_set;

  Duration duration() const { return t_end - t_start; }
};

inline geo::LatLon staypoint_centroid(std::span<const GpsObservation> members) {
  if (members.empty()) throw EmptyMembers();
  double lat = 0.0;
  double lon = 0.0;
  for (const auto& m : members) {
    lat += m.lat;
    lon += m.lon;
  }
  const auto n = static_cast<double>(members.size());
  return {lat / n, lon / n};
}

/// Greedy left-to-right segmentation. A segment grows from its anchor while
/// the next fix is within r_sp of the anchor and within t_gap_sp of the
/// previous member. Segments shorter than t_min_sp are dropped and the anchor
/// advances by one fix.
inline std::vector<GpsStayPoint> extract_gps_staypoints(std::span<const GpsObservation> gps,
                                                        const StayPointParams& p = {}) {
  p.validate();
  std::vector<GpsStayPoint> out;
  std::size_t i = 0;
  while (i < gps.size()) {
    const geo::LatLon anchor{gps[i].lat, gps[i].lon};
    std::size_t j = i;
    while (j + 1 < gps.size() &&
           geo::distance_m(anchor, {gps[j + 1].lat, gps[j + 1].lon}) <= p.r_sp_m &&
           gps[j + 1].t - gps[j].t <= p.t_gap_sp) {
      ++j;
    }
    if (gps[j].t - gps[i].t >= p.t_min_sp) {
      const auto members = gps.subspan(i, j - i + 1);
      out.push_back({{members.begin(), members.end()},
                     gps[i].t,
                     gps[j].t,
                     staypoint_centroid(members)});
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

/// Groups single-AP observations into scans: an observation joins the open
/// snapshot while it is within t_max_wifi of the snapshot's first record.
inline std::vector<WifiSnapshot> group_wifi_snapshots(std::span<const WifiObservation> wifi,
                                                      const StayPointParams& p = {}) {
  std::vector<WifiSnapshot> out;
  for (const auto& obs : wifi) {
    if (out.empty() || obs.t - out.back().t > p.t_max_wifi) {
      out.push_back({obs.t, {}});
    }
    out.back().aps.insert(obs.ap);
  }
  return out;
}

/// APs present in at least half of the snapshots (5 of 10 qualifies).
inline ApSet characteristic_set(std::span<const WifiSnapshot> snaps) {
  std::map<std::string, std::size_t> counts;
  for (const auto& s : snaps) {
    for (const auto& ap : s.aps) ++counts[ap];
  }
  ApSet out;
  for (const auto& [ap, n] : counts) {
    if (2 * n >= snaps.size()) out.insert(ap);
  }
  return out;
}

/// Same greedy scheme as the GPS variant, with Jaccard distance to the
/// anchor snapshot replacing the radius test.
inline std::vector<WifiStayPoint> extract_wifi_staypoints(std::span<const WifiSnapshot> snaps,
                                                          const StayPointParams& p = {}) {
  p.validate();
  std::vector<WifiStayPoint> out;
  std::size_t i = 0;
  while (i < snaps.size()) {
    std::size_t j = i;
    while (j + 1 < snaps.size() &&
           jaccard_distance(snaps[i].aps, snaps[j + 1].aps) <= p.jaccard_max &&
           snaps[j + 1].t - snaps[j].t <= p.t_gap_sp) {
      ++j;
    }
    if (snaps[j].t - snaps[i].t >= p.t_min_sp) {
      const auto members = snaps.subspan(i, j - i + 1);
      out.push_back({{members.begin(), members.end()},
                     snaps[i].t,
                     snaps[j].t,
                     characteristic_set(members)});
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace conxsense
