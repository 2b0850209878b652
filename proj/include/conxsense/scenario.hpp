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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conxsense/error.hpp"
#include "conxsense/geo.hpp"
#include "conxsense/time.hpp"
#include "conxsense/trace.hpp"

namespace conxsense {

struct Place {
  std::string name;
  geo::LatLon center;
  double spread_m = 20.0;  // each visit settles somewhere within this radius
  bool gps = true;         // fixes available while here
  std::vector<std::string> wifi_aps;
  std::vector<std::string> ambient_devices;  // non-mobile BT devices always present
  bool strangers = false;                    // public place with passers-by
  MisuseLabel misuse = MisuseLabel::unsafe;
  ExposureLabel exposure = ExposureLabel::public_place;
};

/// A recurring dwell. `days` lists explicit day indices; when empty the
/// dwell recurs on `weekdays` (0 = Monday).
struct ScheduledDwell {
  std::size_t place = 0;
  std::set<int> weekdays;
  std::set<int> days;
  Duration start_of_day{};
  Duration length{};

  bool active_on(int day, int weekday) const {
    return days.empty() ? weekdays.contains(weekday) : days.contains(day);
  }
};

/// A device that is with the user whenever the user is at `place`.
struct Companion {
  std::string dev;
  std::size_t place = 0;
  double presence = 1.0;  // probability of being there on a given visit
};

struct NoiseConfig {
  double gps_sigma_m = 5.0;
  double wifi_miss = 0.1;
  double bt_miss = 0.1;
};

struct ScenarioConfig {
  std::string name = "custom";
  std::vector<Place> places;
  std::size_t home = 0;  // where the user is when nothing else is scheduled
  std::vector<ScheduledDwell> schedule;
  std::vector<Companion> companions;
  double stranger_rate_per_min = 0.3;  // new stranger bursts per minute in public
  double stranger_reuse = 0.3;
  double stranger_other_class = 0.15;  // share of non-mobile stranger devices
  int feedback_min_per_day = 2;
  int feedback_max_per_day = 3;
  int days = 14;
  NoiseConfig noise;
  double transit_speed_mps = 10.0;
  Duration sample_interval = std::chrono::seconds{60};
  Duration min_home_stay = std::chrono::minutes{30};
  Timestamp start = from_seconds(1362355200.0);  // a Monday, 00:00 UTC
  std::uint64_t seed = 42;
  std::string user_id = "synthetic";

  void validate() const {
    if (places.empty()) throw InvalidSchedule("scenario has no places");
    if (home >= places.size()) throw InvalidSchedule("home index out of range");
    if (days < 1) throw InvalidSchedule("days must be at least 1");
    if (!(transit_speed_mps > 0.0)) throw InvalidSchedule("transit speed must be positive");
    if (sample_interval <= Duration::zero()) throw InvalidSchedule("bad sample interval");
    const auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob(noise.wifi_miss) || !prob(noise.bt_miss) || !prob(stranger_reuse) ||
        !prob(stranger_other_class) || !prob(stranger_rate_per_min)) {
      throw InvalidSchedule("probabilities must lie in [0, 1]");
    }
    if (noise.gps_sigma_m < 0.0) throw InvalidSchedule("negative GPS noise");
    if (feedback_min_per_day < 0 || feedback_max_per_day < feedback_min_per_day) {
      throw InvalidSchedule("bad feedback counts");
    }
    for (const auto& d : schedule) {
      if (d.place >= places.size()) throw InvalidSchedule("dwell place out of range");
      if (d.length <= Duration::zero()) throw InvalidSchedule("dwell length must be positive");
      if (d.start_of_day < Duration::zero() || d.start_of_day + d.length > std::chrono::hours{24}) {
        throw InvalidSchedule("dwell must fit inside its day");
      }
    }
    for (const auto& c : companions) {
      if (c.place >= places.size()) throw InvalidSchedule("companion place out of range");
      if (!prob(c.presence)) throw InvalidSchedule("companion presence outside [0, 1]");
    }
  }
};

/// One piece of the simulated day: a stay at a place, or transit between
/// two places. Half-open interval [t_start, t_end).
struct Segment {
  Timestamp t_start;
  Timestamp t_end;
  std::optional<std::size_t> place;  // nullopt while in transit
  std::size_t from = 0;
  std::size_t to = 0;
  bool scheduled = false;  // a ScheduledDwell (not home filler)

  bool transit() const { return !place.has_value(); }
};

inline Duration travel_time(const ScenarioConfig& cfg, std::size_t a, std::size_t b) {
  if (a == b) return Duration::zero();
  const double meters = geo::distance_m(cfg.places[a].center, cfg.places[b].center);
  const auto secs = static_cast<std::int64_t>(std::ceil(meters / cfg.transit_speed_mps));
  return std::chrono::seconds{std::max<std::int64_t>(secs, 60)};
}

/// Lays the schedule out as a continuous timeline. Between scheduled dwells
/// the user goes home when there is time for at least `min_home_stay` there;
/// otherwise they stay put until they must leave for the next dwell.
inline std::vector<Segment> build_timeline(const ScenarioConfig& cfg) {
  cfg.validate();
  struct Planned {
    Timestamp start;
    Timestamp end;
    std::size_t place;
  };
  std::vector<Planned> planned;
  for (int day = 0; day < cfg.days; ++day) {
    const Timestamp midnight = cfg.start + std::chrono::days{day};
    for (const auto& d : cfg.schedule) {
      if (d.active_on(day, day % 7)) {
        planned.push_back({midnight + d.start_of_day, midnight + d.start_of_day + d.length, d.place});
      }
    }
  }
  std::sort(planned.begin(), planned.end(),
            [](const Planned& a, const Planned& b) { return a.start < b.start; });

  const Timestamp end = cfg.start + std::chrono::days{cfg.days};
  std::vector<Segment> out;
  std::size_t at = cfg.home;
  Timestamp since = cfg.start;
  bool at_scheduled = false;

  const auto stay = [&](Timestamp until) {
    if (until > since) out.push_back({since, until, at, at, at, at_scheduled});
    since = until;
  };
  const auto move = [&](std::size_t dest) {
    const Timestamp arrive = since + travel_time(cfg, at, dest);
    if (dest != at) out.push_back({since, arrive, std::nullopt, at, dest, false});
    since = arrive;
    at = dest;
  };

  for (const auto& p : planned) {
    if (p.start < since) throw InvalidSchedule("overlapping dwells in schedule");
    if (at != cfg.home) {
      const Duration via_home =
          travel_time(cfg, at, cfg.home) + cfg.min_home_stay + travel_time(cfg, cfg.home, p.place);
      if (since + via_home <= p.start) {
        move(cfg.home);
        at_scheduled = false;
      }
    }
    const Duration leg = travel_time(cfg, at, p.place);
    if (since + leg > p.start) {
      throw InvalidSchedule("not enough time to reach " + cfg.places[p.place].name);
    }
    stay(p.start - leg);
    move(p.place);
    at_scheduled = true;
    stay(p.end);
  }
  if (at != cfg.home) {
    if (since + travel_time(cfg, at, cfg.home) > end) throw InvalidSchedule("no time to return home");
    at_scheduled = false;
    move(cfg.home);
  }
  at_scheduled = false;
  stay(end);
  return out;
}

/// The commuter benchmark: home, a workplace with two colleagues' phones,
/// a grocery store on the way back every weekday, a public sports facility
/// three times a week, and stranger devices in public places and transit.
inline ScenarioConfig commuter_scenario(int days = 14, std::uint64_t seed = 42) {
  using namespace std::chrono_literals;
  ScenarioConfig cfg;
  cfg.name = "commuter";
  cfg.days = days;
  cfg.seed = seed;
  const geo::LatLon home{60.1699, 24.9384};
  cfg.places = {
      {"home", home, 20.0, true,
       {"02:1a:11:00:00:01", "02:1a:11:00:00:02", "02:1a:11:00:00:03", "02:1a:11:00:00:04"},
       {"tv-livingroom"}, false, MisuseLabel::safe, ExposureLabel::home},
      {"work", geo::offset(home, 3000.0, 4000.0), 25.0, true,
       {"02:2b:22:00:00:01", "02:2b:22:00:00:02", "02:2b:22:00:00:03", "02:2b:22:00:00:04",
        "02:2b:22:00:00:05"},
       {"printer-3f"}, false, MisuseLabel::unsafe, ExposureLabel::work},
      {"grocery", geo::offset(home, 2500.0, 3400.0), 15.0, true,
       {"02:3c:33:00:00:01", "02:3c:33:00:00:02", "02:3c:33:00:00:03"},
       {}, true, MisuseLabel::unsafe, ExposureLabel::public_place},
      {"sports", geo::offset(home, -1500.0, 1200.0), 25.0, true, {}, {}, true,
       MisuseLabel::unsafe, ExposureLabel::public_place},
  };
  cfg.home = 0;
  cfg.schedule = {
      {1, {0, 1, 2, 3, 4}, {}, 8h, 8h},            // work
      {2, {0, 1, 2, 3, 4}, {}, 16h + 30min, 15min},  // grocery store
      {3, {1, 3}, {}, 18h, 1h},                    // sports, Tue/Thu evening
      {3, {5}, {}, 10h, 90min},                    // sports, Saturday morning
  };
  cfg.companions = {{"colleague-anna", 1, 0.95}, {"colleague-ben", 1, 0.9}};
  return cfg;
}

/// Grocery sub-scenario: ten 15-minute grocery visits within a
/// 30 m spread and no other GPS-visible dwells.
inline ScenarioConfig grocery_scenario(std::uint64_t seed = 7) {
  using namespace std::chrono_literals;
  ScenarioConfig cfg;
  cfg.name = "grocery";
  cfg.days = 10;
  cfg.seed = seed;
  const geo::LatLon home{60.1699, 24.9384};
  cfg.places = {
      {"home", home, 10.0, false, {}, {}, false, MisuseLabel::safe, ExposureLabel::home},
      {"grocery", geo::offset(home, 1200.0, 800.0), 15.0, true, {}, {}, true,
       MisuseLabel::unsafe, ExposureLabel::public_place},
  };
  cfg.schedule = {{1, {0, 1, 2, 3, 4, 5, 6}, {}, 17h, 15min}};
  return cfg;
}

}  // namespace conxsense
