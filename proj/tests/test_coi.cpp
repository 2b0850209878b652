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

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "conxsense/coi.hpp"
#include "generators.hpp"

using namespace conxsense;

namespace {

const geo::LatLon kOrigin{60.17, 24.94};

GpsStayPoint stay(double t_start_s, double minutes, double north_m, double east_m) {
  const auto c = geo::offset(kOrigin, north_m, east_m);
  GpsStayPoint sp;
  sp.t_start = from_seconds(t_start_s);
  sp.t_end = sp.t_start + seconds(minutes * 60.0);
  sp.centroid = c;
  sp.members = {{sp.t_start, c.lat, c.lon}, {sp.t_end, c.lat, c.lon}};
  return sp;
}

WifiStayPoint wstay(double t_start_s, double minutes, ApSet aps) {
  WifiStayPoint sp;
  sp.t_start = from_seconds(t_start_s);
  sp.t_end = sp.t_start + seconds(minutes * 60.0);
  sp.char_set = std::move(aps);
  return sp;
}

}  // namespace

TEST(GpsCoi, GroceryStoreTenVisits) {
  std::vector<GpsStayPoint> sps;
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    sps.push_back(stay(86400.0 * i, 15, rng.uniform(0.0, 30.0), rng.uniform(0.0, 30.0)));
  }
  const auto cois = detect_gps_cois(sps);
  ASSERT_EQ(cois.size(), 1u);
  EXPECT_EQ(cois[0].member_staypoints.size(), 10u);
  EXPECT_EQ(cois[0].total_duration, std::chrono::minutes{150});
  for (const auto& sp : sps) EXPECT_TRUE(cois[0].bounds.contains(sp.centroid));
}

TEST(GpsCoi, FrequencyThreshold) {
  std::vector<GpsStayPoint> sps;
  for (int i = 0; i < 4; ++i) sps.push_back(stay(86400.0 * i, 60, 0, 0));
  EXPECT_TRUE(detect_gps_cois(sps).empty());
  // "More than five" for GPS: five co-located stays do not qualify, six do.
  sps.push_back(stay(86400.0 * 4, 60, 0, 0));
  EXPECT_TRUE(detect_gps_cois(sps).empty());
  sps.push_back(stay(86400.0 * 5, 60, 0, 0));
  EXPECT_EQ(detect_gps_cois(sps).size(), 1u);

  CoiParams at_least;
  at_least.gps_count_rule = CountRule::greater_equal;
  sps.pop_back();
  EXPECT_EQ(detect_gps_cois(sps, at_least).size(), 1u);
}

TEST(GpsCoi, DurationThreshold) {
  std::vector<GpsStayPoint> sps;
  for (int i = 0; i < 6; ++i) sps.push_back(stay(86400.0 * i, 2, 0, 0));
  EXPECT_TRUE(detect_gps_cois(sps).empty());
  std::vector<GpsStayPoint> exact;
  for (int i = 0; i < 6; ++i) exact.push_back(stay(86400.0 * i, 5, 0, 0));
  EXPECT_EQ(detect_gps_cois(exact).size(), 1u);  // 30 min total is enough
}

TEST(GpsCoi, SeparatePlacesStaySeparate) {
  std::vector<GpsStayPoint> sps;
  for (int i = 0; i < 12; ++i) sps.push_back(stay(3600.0 * i, 20, i % 2 ? 0.0 : 500.0, 0));
  const auto cois = detect_gps_cois(sps);
  ASSERT_EQ(cois.size(), 2u);
  EXPECT_NE(cois[0].id, cois[1].id);
}

TEST(GpsCoi, RectanglesAreTightAndBounded) {
  Rng rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<GpsStayPoint> sps;
    const std::size_t n = 1 + rng.index(60);
    for (std::size_t i = 0; i < n; ++i) {
      const double cluster = static_cast<double>(rng.index(3)) * 120.0;
      sps.push_back(stay(600.0 * static_cast<double>(i), rng.uniform(1.0, 40.0),
                         cluster + rng.uniform(-60.0, 60.0), rng.uniform(-60.0, 60.0)));
    }
    CoiParams p;
    p.f_min_coi = 1 + rng.index(6);
    const auto cois = detect_gps_cois(sps, p);
    std::vector<int> seen(n, 0);
    for (const auto& c : cois) {
      double lat_min = 1e9, lat_max = -1e9, lon_min = 1e9, lon_max = -1e9;
      for (auto m : c.member_staypoints) {
        ++seen[m];
        lat_min = std::min(lat_min, sps[m].centroid.lat);
        lat_max = std::max(lat_max, sps[m].centroid.lat);
        lon_min = std::min(lon_min, sps[m].centroid.lon);
        lon_max = std::max(lon_max, sps[m].centroid.lon);
      }
      EXPECT_EQ(c.bounds.lat_min, lat_min);
      EXPECT_EQ(c.bounds.lat_max, lat_max);
      EXPECT_EQ(c.bounds.lon_min, lon_min);
      EXPECT_EQ(c.bounds.lon_max, lon_max);
      EXPECT_LE(c.bounds.height_m(), p.gps_max_m + 0.5);
      EXPECT_LE(c.bounds.width_m(), p.gps_max_m + 0.5);
    }
    for (int s : seen) EXPECT_LE(s, 1);
    EXPECT_EQ(detect_gps_cois(sps, p).size(), cois.size());
    for (std::size_t k = 0; k < cois.size(); ++k) EXPECT_EQ(detect_gps_cois(sps, p)[k].id, cois[k].id);
  }
}

TEST(WifiCoi, Examples) {
  std::vector<WifiStayPoint> six;
  for (int i = 0; i < 6; ++i) six.push_back(wstay(3600.0 * i, 10, {"A", "B"}));
  const auto one = detect_wifi_cois(six);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].aps, (ApSet{"A", "B"}));

  std::vector<WifiStayPoint> mixed;
  for (int i = 0; i < 5; ++i) mixed.push_back(wstay(3600.0 * i, 10, {"A", "B"}));
  for (int i = 5; i < 10; ++i) mixed.push_back(wstay(3600.0 * i, 10, {"A", "B", "C"}));
  const auto two = detect_wifi_cois(mixed);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NE(two[0].aps, two[1].aps);

  EXPECT_TRUE(detect_wifi_cois(std::vector<WifiStayPoint>{}).empty());
}

TEST(WifiCoi, PermutationInvariant) {
  Rng rng(8);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<WifiStayPoint> sps;
    const std::size_t n = 1 + rng.index(40);
    for (std::size_t i = 0; i < n; ++i) {
      sps.push_back(wstay(3600.0 * static_cast<double>(i), rng.uniform(5.0, 30.0),
                          gen::random_ap_set(rng, 3, 0.6)));
    }
    const auto base = detect_wifi_cois(sps);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(std::span<std::size_t>(order));
    std::vector<WifiStayPoint> shuffled;
    for (auto i : order) shuffled.push_back(sps[i]);
    const auto perm = detect_wifi_cois(shuffled);
    ASSERT_EQ(perm.size(), base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
      EXPECT_EQ(perm[k].id, base[k].id);
      EXPECT_EQ(perm[k].aps, base[k].aps);
      EXPECT_EQ(perm[k].total_duration, base[k].total_duration);
      EXPECT_EQ(perm[k].member_staypoints.size(), base[k].member_staypoints.size());
    }
  }
}

TEST(CoiIds, StableAndDistinct) {
  EXPECT_EQ(wifi_coi_id({"a", "b"}), wifi_coi_id({"b", "a"}));
  EXPECT_NE(wifi_coi_id({"a", "b"}), wifi_coi_id({"a", "b", "c"}));
  const GeoRect r{60.0, 24.0, 60.001, 24.001};
  EXPECT_EQ(gps_coi_id(r), gps_coi_id(r));
  EXPECT_EQ(gps_coi_id(r).rfind("gps-", 0), 0u);
}
