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
#include <cstdint>
#include <cstdio>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conxsense/error.hpp"
#include "conxsense/geo.hpp"
#include "conxsense/staypoints.hpp"

namespace conxsense {

/// How a visit count is compared against f_min_coi.
enum class CountRule { greater, greater_equal };

inline bool passes(CountRule rule, std::size_t count, std::size_t threshold) {
  return rule == CountRule::greater ? count > threshold : count >= threshold;
}

struct CoiParams {
  double gps_max_m = 100.0;
  std::size_t f_min_coi = 5;
  Duration t_min_coi = std::chrono::minutes{30};
  // GPS areas need "more than" f_min_coi visits, WiFi sets "at least".
  CountRule gps_count_rule = CountRule::greater;
  CountRule wifi_count_rule = CountRule::greater_equal;

  void validate() const {
    if (!(gps_max_m > 0.0)) throw InvalidParams("gps_max must be positive");
    if (f_min_coi < 1) throw InvalidParams("f_min_coi must be at least 1");
    if (t_min_coi <= Duration::zero()) throw InvalidParams("t_min_coi must be positive");
  }
};

struct GeoRect {
  double lat_min = 0.0;
  double lon_min = 0.0;
  double lat_max = 0.0;
  double lon_max = 0.0;

  static GeoRect around(geo::LatLon p) { return {p.lat, p.lon, p.lat, p.lon}; }

  GeoRect expanded(geo::LatLon p) const {
    return {std::min(lat_min, p.lat), std::min(lon_min, p.lon), std::max(lat_max, p.lat),
            std::max(lon_max, p.lon)};
  }

  double mean_lat() const { return (lat_min + lat_max) / 2.0; }
  double height_m() const { return geo::lat_span_m(lat_min, lat_max); }
  double width_m() const { return geo::lon_span_m(lon_min, lon_max, mean_lat()); }

  /// Closed-rectangle membership.
  bool contains(geo::LatLon p) const {
    return lat_min <= p.lat && p.lat <= lat_max && lon_min <= p.lon && p.lon <= lon_max;
  }

  /// Open-interior membership used for visit detection.
  bool contains_strictly(geo::LatLon p) const {
    return lat_min < p.lat && p.lat < lat_max && lon_min < p.lon && p.lon < lon_max;
  }

  friend bool operator==(const GeoRect&, const GeoRect&) = default;
};

struct GpsCoi {
  std::string id;
  GeoRect bounds;
  std::vector<std::size_t> member_staypoints;  // indices into the stay-point list
  Duration total_duration{};
};

struct WifiCoi {
  std::string id;
  ApSet aps;
  std::vector<std::size_t> member_staypoints;
  Duration total_duration{};
};

struct CoiSet {
  std::vector<GpsCoi> gps;
  std::vector<WifiCoi> wifi;
};

namespace detail {

inline std::string fnv1a_hex(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace detail

inline std::string gps_coi_id(const GeoRect& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f", r.lat_min, r.lon_min, r.lat_max,
                r.lon_max);
  return "gps-" + detail::fnv1a_hex(buf);
}

inline std::string wifi_coi_id(const ApSet& aps) {
  std::string key;
  for (const auto& ap : aps) {
    key += ap;
    key += ';';
  }
  return "wifi-" + detail::fnv1a_hex(key);
}

inline bool fits_gps_max(const GeoRect& r, double gps_max_m) {
  return r.height_m() <= gps_max_m && r.width_m() <= gps_max_m;
}

/// First-fit box growing over stay-point centroids in chronological order.
/// Each stay point joins exactly one candidate box; candidates passing the
/// frequency and total-duration thresholds become CoIs.
inline std::vector<GpsCoi> detect_gps_cois(std::span<const GpsStayPoint> sps,
                                           const CoiParams& p = {}) {
  p.validate();
  std::vector<bool> assigned(sps.size(), false);
  std::vector<GpsCoi> out;
  for (std::size_t seed = 0; seed < sps.size(); ++seed) {
    if (assigned[seed]) continue;
    GeoRect box = GeoRect::around(sps[seed].centroid);
    std::vector<std::size_t> members{seed};
    assigned[seed] = true;
    for (std::size_t j = seed + 1; j < sps.size(); ++j) {
      if (assigned[j]) continue;
      const GeoRect grown = box.expanded(sps[j].centroid);
      if (fits_gps_max(grown, p.gps_max_m)) {
        box = grown;
        members.push_back(j);
        assigned[j] = true;
      }
    }
    Duration total{};
    for (auto m : members) total += sps[m].duration();
    if (passes(p.gps_count_rule, members.size(), p.f_min_coi) && total >= p.t_min_coi) {
      out.push_back({gps_coi_id(box), box, std::move(members), total});
    }
  }
  return out;
}

/// Groups WiFi stay points by exact characteristic-set equality. Output is
/// ordered by AP set, so it does not depend on input order.
inline std::vector<WifiCoi> detect_wifi_cois(std::span<const WifiStayPoint> wsps,
                                             const CoiParams& p = {}) {
  p.validate();
  std::map<ApSet, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < wsps.size(); ++i) {
    if (wsps[i].char_set.empty()) continue;
    groups[wsps[i].char_set].push_back(i);
  }
  std::vector<WifiCoi> out;
  for (auto& [aps, members] : groups) {
    Duration total{};
    for (auto m : members) total += wsps[m].duration();
    if (passes(p.wifi_count_rule, members.size(), p.f_min_coi) && total >= p.t_min_coi) {
      std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        return std::pair(wsps[a].t_start, a) < std::pair(wsps[b].t_start, b);
      });
      out.push_back({wifi_coi_id(aps), aps, std::move(members), total});
    }
  }
  return out;
}

}  // namespace conxsense
