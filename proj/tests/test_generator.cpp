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

#include <set>

#include "conxsense/conxsense.hpp"

using namespace conxsense;
using namespace std::chrono_literals;

namespace {

ScenarioConfig quiet_single_place() {
  ScenarioConfig cfg;
  cfg.days = 1;
  cfg.places = {{"home", {60.0, 25.0}, 10.0, true, {"02:00:00:00:00:01", "02:00:00:00:00:02"},
                 {"tv"}, false, MisuseLabel::safe, ExposureLabel::home}};
  cfg.noise = {0.0, 0.0, 0.0};
  return cfg;
}

}  // namespace

TEST(Generator, SameSeedSameBytes) {
  const auto a = serialize_trace(generate_synthetic_trace(commuter_scenario(3, 5)));
  const auto b = serialize_trace(generate_synthetic_trace(commuter_scenario(3, 5)));
  EXPECT_EQ(a, b);
  const auto c = serialize_trace(generate_synthetic_trace(commuter_scenario(3, 6)));
  EXPECT_NE(a, c);
}

TEST(Generator, NoiselessTraceIsExact) {
  const auto cfg = quiet_single_place();
  const auto seq = generate_synthetic_trace(cfg);
  const auto gps = seq.gps();
  ASSERT_EQ(gps.size(), 24u * 60u);
  std::set<std::pair<double, double>> spots;
  for (const auto& g : gps) spots.emplace(g.lat, g.lon);
  EXPECT_EQ(spots.size(), 1u);
  EXPECT_EQ(seq.wifi().size(), 2 * gps.size());
  EXPECT_EQ(seq.bt().size(), gps.size());
  // At most one label per distinct place and day.
  const auto fb = seq.feedback();
  EXPECT_EQ(fb.size(), 1u);
  for (const auto& f : fb) {
    EXPECT_EQ(f.misuse, MisuseLabel::safe);
    EXPECT_EQ(f.exposure, ExposureLabel::home);
  }
}

TEST(Generator, GroceryVisitsBecomeStayPoints) {
  const auto seq = generate_synthetic_trace(grocery_scenario());
  const auto sps = extract_gps_staypoints(seq.gps(), StayPointParams{});
  ASSERT_EQ(sps.size(), 10u);
  for (const auto& sp : sps) {
    EXPECT_GE(sp.duration(), 10min);
    EXPECT_LE(sp.duration(), 15min);
  }
}

TEST(Generator, TraceIsCleanAndSorted) {
  const auto seq = generate_synthetic_trace(commuter_scenario(7, 9));
  const auto report = validate_sequence(seq);
  EXPECT_TRUE(report.duplicates.empty());
  for (std::size_t i = 1; i < seq.records.size(); ++i) {
    EXPECT_LE(record_time(seq.records[i - 1]), record_time(seq.records[i]));
  }
}

TEST(Generator, InvalidSchedule) {
  ScenarioConfig empty;
  EXPECT_THROW(generate_synthetic_trace(empty), InvalidSchedule);
  auto late = quiet_single_place();
  late.schedule = {{0, {0}, {}, 23h, 2h}};
  EXPECT_THROW(generate_synthetic_trace(late), InvalidSchedule);
  auto bad_place = quiet_single_place();
  bad_place.companions = {{"x", 3, 1.0}};
  EXPECT_THROW(generate_synthetic_trace(bad_place), InvalidSchedule);
  auto bad_prob = quiet_single_place();
  bad_prob.noise.wifi_miss = 1.5;
  EXPECT_THROW(generate_synthetic_trace(bad_prob), InvalidSchedule);
}
