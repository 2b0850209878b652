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

#include <vector>

#include "conxsense/social_context.hpp"
#include "generators.hpp"

using namespace conxsense;

namespace {

const GeoRect kBox{60.0, 24.0, 60.001, 24.002};

CoiSet gps_box() {
  CoiSet s;
  s.gps.push_back({"box", kBox, {}, {}});
  return s;
}

void add_fix(ObservationSequence& seq, double t, bool inside) {
  seq.records.push_back(GpsObservation{from_seconds(t), inside ? 60.0005 : 61.0, inside ? 24.001 : 25.0});
}

void add_bt(ObservationSequence& seq, double t, const std::string& dev,
            DeviceClass cls = DeviceClass::mobile) {
  seq.records.push_back(BtObservation{from_seconds(t), dev, cls});
}

Encounter enc(const std::string& dev, double a, double b) {
  return {dev, from_seconds(a), from_seconds(b)};
}

}  // namespace

TEST(Visits, FiveFixesOneVisit) {
  ObservationSequence seq;
  for (int i = 0; i < 5; ++i) add_fix(seq, 60.0 * i, true);
  const auto v = detect_visits(seq, gps_box());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].duration(), std::chrono::seconds{240});
}

TEST(Visits, GapSplits) {
  ObservationSequence seq;
  add_fix(seq, 0, true);
  add_fix(seq, 60, true);
  add_fix(seq, 460, true);
  EXPECT_EQ(detect_visits(seq, gps_box()).size(), 2u);

  ObservationSequence boundary;
  add_fix(boundary, 0, true);
  add_fix(boundary, 300, true);  // exactly eps_visit apart still chains
  EXPECT_EQ(detect_visits(boundary, gps_box()).size(), 1u);
}

TEST(Visits, OutsideFixesDoNotBreakAVisit) {
  ObservationSequence seq;
  add_fix(seq, 0, true);
  add_fix(seq, 60, false);
  add_fix(seq, 120, true);
  const auto v = detect_visits(seq, gps_box());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].duration(), std::chrono::seconds{120});
}

TEST(Visits, BoundaryFixIsOutside) {
  ObservationSequence seq;
  seq.records.push_back(GpsObservation{from_seconds(0), kBox.lat_min, 24.001});
  EXPECT_TRUE(detect_visits(seq, gps_box()).empty());
}

TEST(Visits, WifiSnapshotWithinJaccard) {
  CoiSet cois;
  cois.wifi.push_back({"w", {"00:00:00:00:00:0a", "00:00:00:00:00:0b", "00:00:00:00:00:0c",
                             "00:00:00:00:00:0d"}, {}, {}});
  ObservationSequence seq;
  for (const char* ap : {"00:00:00:00:00:0a", "00:00:00:00:00:0b", "00:00:00:00:00:0c"}) {
    seq.records.push_back(WifiObservation{from_seconds(100), ap});
  }
  const auto v = detect_visits(seq, cois);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, CoiKind::wifi);
}

TEST(Encounters, Examples) {
  ObservationSequence a;
  for (double t : {0.0, 60.0, 120.0}) add_bt(a, t, "d");
  const auto e = detect_encounters(a);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].duration(), std::chrono::seconds{120});

  ObservationSequence b;
  add_bt(b, 0, "d");
  add_bt(b, 300, "d");  // strict comparison: exactly eps_enc splits
  EXPECT_EQ(detect_encounters(b).size(), 2u);

  ObservationSequence c;
  for (double t : {0.0, 60.0}) add_bt(c, t, "tv", DeviceClass::other);
  EXPECT_TRUE(detect_encounters(c).empty());
}

TEST(Contexts, Location) {
  const std::vector<Visit> visits{{"g", CoiKind::gps, from_seconds(0), from_seconds(100)},
                                  {"w", CoiKind::wifi, from_seconds(50), from_seconds(200)}};
  EXPECT_EQ(location_context_at(from_seconds(10), visits), (std::set<std::string>{"g"}));
  EXPECT_EQ(location_context_at(from_seconds(75), visits), (std::set<std::string>{"g", "w"}));
  EXPECT_EQ(location_context_at(from_seconds(100), visits), (std::set<std::string>{"g", "w"}));
  EXPECT_TRUE(location_context_at(from_seconds(500), visits).empty());
}

TEST(Contexts, Devices) {
  const std::vector<Encounter> encs{enc("a", 0, 100), enc("b", 50, 150), enc("a", 400, 500)};
  EXPECT_EQ(device_context_at(from_seconds(60), encs), (std::set<std::string>{"a", "b"}));
  EXPECT_TRUE(device_context_at(from_seconds(300), encs).empty());
  EXPECT_TRUE(device_context_at(from_seconds(0), std::vector<Encounter>{}).empty());
}

TEST(Profiles, Familiarity) {
  std::vector<Encounter> six;
  for (int i = 0; i < 6; ++i) six.push_back(enc("d", 3600.0 * i, 3600.0 * i + 600));
  EXPECT_TRUE(build_profiles({}, six).device.is_familiar("d"));

  std::vector<Encounter> ten_short;
  for (int i = 0; i < 10; ++i) ten_short.push_back(enc("d", 3600.0 * i, 3600.0 * i + 60));
  EXPECT_FALSE(build_profiles({}, ten_short).device.is_familiar("d"));

  const auto empty = build_profiles({}, {});
  EXPECT_TRUE(empty.device.devices.empty());
  EXPECT_TRUE(empty.device.familiar.empty());
}

TEST(Profiles, DurationsSumExactly) {
  Rng rng(21);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Visit> visits;
    std::map<std::string, Duration> expected;
    for (int i = 0; i < 50; ++i) {
      const std::string id = "c" + std::to_string(rng.index(4));
      const Timestamp a = from_seconds(std::round(rng.uniform(0, 1e6) * 10.0) / 10.0);
      const Timestamp b = a + seconds(std::round(rng.uniform(0, 5000) * 10.0) / 10.0);
      visits.push_back({id, CoiKind::gps, a, b});
      expected[id] += b - a;
    }
    const auto prof = build_profiles(visits, {});
    for (const auto& [id, d] : expected) EXPECT_EQ(prof.coi.cois.at(id).duration, d);
  }
}

TEST(Profiles, FamiliarityIsMonotone) {
  Rng rng(4);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Encounter> encs;
    for (int i = 0; i < 30; ++i) {
      const double a = rng.uniform(0, 1e6);
      encs.push_back(enc("d" + std::to_string(rng.index(5)), a, a + rng.uniform(0, 1200)));
    }
    const auto before = build_profiles({}, encs);
    for (const auto& d : before.device.familiar) EXPECT_TRUE(before.device.devices.contains(d));
    encs.push_back(enc("d" + std::to_string(rng.index(5)), 2e6, 2e6 + rng.uniform(0, 1200)));
    const auto after = build_profiles({}, encs);
    for (const auto& d : before.device.familiar) EXPECT_TRUE(after.device.is_familiar(d));
  }
}

TEST(Contexts, ConsistentWithVisits) {
  Rng rng(9);
  ObservationSequence seq;
  double t = 0;
  for (int i = 0; i < 400; ++i) {
    t += std::round(rng.uniform(10, 400));
    add_fix(seq, t, rng.bernoulli(0.7));
  }
  const auto visits = detect_visits(seq, gps_box());
  for (int i = 0; i < 2000; ++i) {
    const Timestamp q = from_seconds(std::round(rng.uniform(0, t)));
    bool inside = false;
    for (const auto& v : visits) inside = inside || (v.t_start <= q && q <= v.t_end);
    EXPECT_EQ(location_context_at(q, visits).contains("box"), inside);
  }
}
