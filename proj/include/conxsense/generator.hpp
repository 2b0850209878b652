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
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "conxsense/geo.hpp"
#include "conxsense/random.hpp"
#include "conxsense/scenario.hpp"
#include "conxsense/trace.hpp"

namespace conxsense {

namespace detail {

struct StrangerBurst {
  std::string dev;
  DeviceClass cls;
  Timestamp until;
};

struct StrangerPool {
  struct Entry {
    std::string dev;
    DeviceClass cls;
    int uses;
  };
  std::vector<Entry> entries;
  std::size_t fresh = 0;

  // Reused ids are capped at three bursts, which keeps every stranger below
  // the familiar-device thresholds.
  StrangerBurst spawn(const ScenarioConfig& cfg, Rng& rng, Timestamp until,
                      const std::vector<StrangerBurst>& active) {
    const auto is_active = [&](const std::string& dev) {
      return std::any_of(active.begin(), active.end(),
                         [&](const StrangerBurst& b) { return b.dev == dev; });
    };
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].uses < 3 && !is_active(entries[i].dev)) eligible.push_back(i);
    }
    if (!eligible.empty() && rng.bernoulli(cfg.stranger_reuse)) {
      auto& e = entries[eligible[rng.index(eligible.size())]];
      ++e.uses;
      return {e.dev, e.cls, until};
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "stranger-%05zu", fresh++);
    const DeviceClass cls =
        rng.bernoulli(cfg.stranger_other_class) ? DeviceClass::other : DeviceClass::mobile;
    entries.push_back({buf, cls, 1});
    return {buf, cls, until};
  }
};

inline bool is_public(const ScenarioConfig& cfg, const Segment& s) {
  return s.transit() || cfg.places[*s.place].strangers;
}

/// Feedback times: per day, 2-3 reports drawn inside distinct places' dwell
/// windows during waking hours, covering a public place first when the day
/// has one and a private place next.
inline std::vector<std::pair<Timestamp, std::size_t>> plan_feedback(
    const ScenarioConfig& cfg, const std::vector<Segment>& timeline, Rng& rng) {
  using namespace std::chrono_literals;
  std::vector<std::pair<Timestamp, std::size_t>> out;
  for (int day = 0; day < cfg.days; ++day) {
    const Timestamp wake = cfg.start + std::chrono::days{day} + 7h;
    const Timestamp sleep = cfg.start + std::chrono::days{day} + 23h;
    std::map<std::size_t, std::vector<std::pair<Timestamp, Timestamp>>> windows;
    for (const auto& s : timeline) {
      if (s.transit()) continue;
      const Timestamp a = std::max(s.t_start, wake);
      const Timestamp b = std::min(s.t_end, sleep);
      if (b - a >= 10min) windows[*s.place].emplace_back(a, b);
    }
    std::vector<std::size_t> pub;
    std::vector<std::size_t> priv;
    for (const auto& [place, w] : windows) {
      (cfg.places[place].strangers ? pub : priv).push_back(place);
    }
    rng.shuffle(std::span<std::size_t>(pub));
    rng.shuffle(std::span<std::size_t>(priv));
    std::vector<std::size_t> order;
    if (!pub.empty()) order.push_back(pub.front());
    if (!priv.empty()) order.push_back(priv.front());
    std::vector<std::size_t> rest;
    for (std::size_t i = 1; i < pub.size(); ++i) rest.push_back(pub[i]);
    for (std::size_t i = 1; i < priv.size(); ++i) rest.push_back(priv[i]);
    rng.shuffle(std::span<std::size_t>(rest));
    order.insert(order.end(), rest.begin(), rest.end());

    const int span = cfg.feedback_max_per_day - cfg.feedback_min_per_day + 1;
    const auto k = static_cast<std::size_t>(cfg.feedback_min_per_day +
                                            static_cast<int>(rng.index(static_cast<std::size_t>(span))));
    for (std::size_t i = 0; i < std::min(k, order.size()); ++i) {
      const auto& w = windows[order[i]];
      const auto [a, b] = w[rng.index(w.size())];
      const double len = to_seconds(b - a);
      const double at = to_seconds(a) + len * rng.uniform(0.2, 0.8);
      out.emplace_back(from_seconds(std::round(at)), order[i]);
    }
  }
  return out;
}

}  // namespace detail

/// Samples the scenario every `sample_interval`: a GPS fix when outdoors or
/// in transit, a WiFi scan at places with access points, and a Bluetooth
/// scan of companions, ambient devices and strangers, each subject to the
/// configured miss probabilities. Identical configs give identical traces.
inline ObservationSequence generate_synthetic_trace(const ScenarioConfig& cfg) {
  const auto timeline = build_timeline(cfg);
  Rng rng(cfg.seed);
  ObservationSequence seq;
  seq.user_id = cfg.user_id;

  for (const auto& [t, place] : detail::plan_feedback(cfg, timeline, rng)) {
    seq.records.push_back(
        FeedbackObservation{t, cfg.places[place].misuse, cfg.places[place].exposure});
  }

  detail::StrangerPool pool;
  std::vector<detail::StrangerBurst> bursts;
  std::size_t seg_idx = 0;
  std::size_t entered = timeline.size();  // segment whose per-visit state is set up
  geo::LatLon spot{};
  std::vector<bool> companion_here(cfg.companions.size(), false);

  const Timestamp end = timeline.back().t_end;
  for (Timestamp t = cfg.start; t < end; t += cfg.sample_interval) {
    while (timeline[seg_idx].t_end <= t) ++seg_idx;
    const Segment& seg = timeline[seg_idx];
    if (entered != seg_idx) {
      entered = seg_idx;
      bursts.clear();
      if (!seg.transit()) {
        const Place& p = cfg.places[*seg.place];
        const double r = p.spread_m * std::sqrt(rng.uniform());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        spot = geo::offset(p.center, r * std::cos(theta), r * std::sin(theta));
      }
      for (std::size_t c = 0; c < cfg.companions.size(); ++c) {
        companion_here[c] = !seg.transit() && cfg.companions[c].place == *seg.place &&
                            rng.bernoulli(cfg.companions[c].presence);
      }
    }

    geo::LatLon pos = spot;
    if (seg.transit()) {
      const double frac = to_seconds(t - seg.t_start) / to_seconds(seg.t_end - seg.t_start);
      const auto& a = cfg.places[seg.from].center;
      const auto& b = cfg.places[seg.to].center;
      pos = {a.lat + (b.lat - a.lat) * frac, a.lon + (b.lon - a.lon) * frac};
    }
    const Place* place = seg.transit() ? nullptr : &cfg.places[*seg.place];

    if (!place || place->gps) {
      const auto fix = geo::offset(pos, rng.normal(0.0, cfg.noise.gps_sigma_m),
                                   rng.normal(0.0, cfg.noise.gps_sigma_m));
      seq.records.push_back(GpsObservation{t, fix.lat, fix.lon});
    }

    if (place) {
      for (std::size_t i = 0; i < place->wifi_aps.size(); ++i) {
        if (!rng.bernoulli(cfg.noise.wifi_miss)) {
          seq.records.push_back(WifiObservation{
              t + Duration{200 * static_cast<std::int64_t>(i)}, place->wifi_aps[i]});
        }
      }
    }

    const Timestamp t_bt = t + std::chrono::seconds{3};
    const auto sight = [&](const std::string& dev, DeviceClass cls) {
      if (!rng.bernoulli(cfg.noise.bt_miss)) seq.records.push_back(BtObservation{t_bt, dev, cls});
    };
    for (std::size_t c = 0; c < cfg.companions.size(); ++c) {
      if (companion_here[c]) sight(cfg.companions[c].dev, DeviceClass::mobile);
    }
    if (place) {
      for (const auto& dev : place->ambient_devices) sight(dev, DeviceClass::other);
    }
    if (detail::is_public(cfg, seg)) {
      std::erase_if(bursts, [&](const auto& b) { return b.until <= t; });
      if (rng.bernoulli(cfg.stranger_rate_per_min)) {
        const auto ticks = static_cast<std::int64_t>(1 + rng.index(6));
        const Timestamp until = std::min(t + cfg.sample_interval * ticks, seg.t_end);
        bursts.push_back(pool.spawn(cfg, rng, until, bursts));
      }
      for (const auto& b : bursts) sight(b.dev, b.cls);
    }
  }
  sort_records(seq.records);
  return seq;
}

}  // namespace conxsense
