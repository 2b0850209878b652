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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "conxsense/conxsense.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace conxsense;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  Outcome() = default;
  Outcome(bool p, std::string d) : pass(p), detail(std::move(d)) {}

  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double elapsed_s(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::vector<oracle::Segment> gps_segments_of(const std::vector<GpsStayPoint>& sps,
                                             const std::vector<GpsObservation>& gps) {
  std::vector<oracle::Segment> out;
  for (const auto& sp : sps) {
    std::size_t first = 0;
    while (gps[first].t != sp.members.front().t) ++first;
    out.push_back({first, first + sp.members.size() - 1});
  }
  return out;
}

std::vector<oracle::Segment> wifi_segments_of(const std::vector<WifiStayPoint>& sps,
                                              const std::vector<WifiSnapshot>& snaps) {
  std::vector<oracle::Segment> out;
  for (const auto& sp : sps) {
    std::size_t first = 0;
    while (snaps[first].t != sp.snapshots.front().t) ++first;
    out.push_back({first, first + sp.snapshots.size() - 1});
  }
  return out;
}

Outcome staypoint_oracle() {
  const auto t0 = Clock::now();
  Rng rng(20260101);
  std::size_t gps_mismatch = 0;
  std::size_t wifi_mismatch = 0;
  const StayPointParams p;
  for (int i = 0; i < 500; ++i) {
    const auto gps = gen::random_gps_trace(rng, 200);
    if (gps_segments_of(extract_gps_staypoints(gps, p), gps) != oracle::gps_segments(gps, p)) {
      ++gps_mismatch;
    }
    const auto snaps = gen::random_wifi_snapshots(rng, 200);
    if (wifi_segments_of(extract_wifi_staypoints(snaps, p), snaps) !=
        oracle::wifi_segments(snaps, p)) {
      ++wifi_mismatch;
    }
  }
  const double secs = elapsed_s(t0);
  return {gps_mismatch == 0 && wifi_mismatch == 0 && secs < 30.0,
          fmt("500 traces, gps mismatches=%zu, wifi mismatches=%zu, %.2f s (limit 30 s)",
              gps_mismatch, wifi_mismatch, secs)};
}

Outcome grocery_example() {
  const auto model = build_context_model(generate_synthetic_trace(grocery_scenario()), {});
  const auto& sps = model.gps_staypoints;
  std::size_t containing = 0;
  for (const auto& c : model.cois.gps) {
    bool all = true;
    for (const auto& sp : sps) all = all && c.bounds.contains(sp.centroid);
    containing += all;
  }
  const bool pass = sps.size() == 10 && model.cois.gps.size() == 1 && containing == 1;
  return {pass, fmt("stay points=%zu, gps CoIs=%zu, CoIs containing all centroids=%zu",
                    sps.size(), model.cois.gps.size(), containing)};
}

Outcome jaccard_and_roc() {
  Rng rng(3);
  std::size_t jaccard_mismatch = 0;
  for (int i = 0; i < 10000; ++i) {
    std::set<std::string> a;
    std::set<std::string> b;
    while (a.empty() && b.empty()) {
      a = gen::random_ap_set(rng, 12, rng.uniform());
      b = gen::random_ap_set(rng, 12, rng.uniform());
    }
    jaccard_mismatch += jaccard_distance(a, b) != oracle::jaccard(a, b);
  }
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<ScoredExample> s(2 + rng.index(300));
    const double levels = 1.0 + static_cast<double>(rng.index(20));
    for (auto& e : s) {
      e.score = std::floor(rng.uniform() * levels) / levels;
      e.positive = rng.bernoulli(0.5);
    }
    s[0].positive = true;
    s[1].positive = false;
    worst = std::max(worst, std::abs(roc_curve(s).auc - oracle::auc_pairs(s)));
  }
  return {jaccard_mismatch == 0 && worst <= 1e-12,
          fmt("jaccard mismatches=%zu/10000, max |AUC - pair count|=%.3g over 100 sets (limit 1e-12)",
              jaccard_mismatch, worst)};
}

std::vector<LabeledFeatureVector> permuted(std::vector<LabeledFeatureVector> data, std::uint64_t seed) {
  std::vector<ClassLabel> labels;
  for (const auto& d : data) labels.push_back(d.label);
  Rng rng(seed);
  rng.shuffle(std::span<ClassLabel>(labels));
  for (std::size_t i = 0; i < data.size(); ++i) data[i].label = labels[i];
  return data;
}

Outcome classifier_sanity(const PipelineResult& r) {
  Outcome out;
  bool pass = true;
  std::string aucs;
  for (const auto& tr : r.tasks) {
    const std::string task(to_string(tr.task));
    for (const ModelKind kind : {ModelKind::random_forest, ModelKind::knn, ModelKind::naive_bayes}) {
      ModelSpec spec;
      spec.kind = kind;
      const auto eval = cross_validate(spec, tr.dataset, 10);
      const bool complete = eval.folds == 10 && eval.pooled_scores.size() == tr.dataset.size();
      const bool gated = kind != ModelKind::naive_bayes;
      const bool ok = complete && (!gated || eval.pooled_roc.auc >= 0.95);
      pass = pass && ok;
      aucs += fmt(" %s/%s=%.3f", task.c_str(), std::string(to_string(kind)).c_str(),
                  eval.pooled_roc.auc);
      std::string ops;
      for (const double target : {0.10, 0.035}) {
        const auto op = operating_point(eval.pooled_roc, target);
        ops += fmt(" TPR@FPR<=%.3f=%.3f", target, op.point.tpr);
      }
      out.notes.push_back(fmt("%s %s: folds=%zu AUC=%.3f%s%s", task.c_str(),
                              std::string(to_string(kind)).c_str(), eval.folds, eval.pooled_roc.auc,
                              ops.c_str(), gated ? " (gate >= 0.95)" : ""));

      if (!gated) continue;
      const int seeds = 25;
      double sum = 0.0;
      double lo = 1.0;
      double hi = 0.0;
      for (int s = 0; s < seeds; ++s) {
        const auto data = permuted(tr.dataset, 1000 + static_cast<std::uint64_t>(s));
        const double auc = cross_validate(spec, data, 10).pooled_roc.auc;
        sum += auc;
        lo = std::min(lo, auc);
        hi = std::max(hi, auc);
      }
      const double mean = sum / seeds;
      const bool perm_ok = mean >= 0.35 && mean <= 0.65;
      pass = pass && perm_ok;
      out.notes.push_back(fmt("%s %s permuted labels: mean AUC=%.3f over %d seeds (min %.3f, max %.3f), "
                              "range [0.35, 0.65]",
                              task.c_str(), std::string(to_string(kind)).c_str(), mean, seeds, lo, hi));
    }
  }
  out.pass = pass;
  out.detail = "commuter seed 42, 14 days, pooled 10-fold AUC:" + aucs;
  return out;
}

Outcome watermark_property() {
  Rng rng(5);
  std::size_t violations = 0;
  std::size_t checked_wakes = 0;
  for (int seq = 0; seq < 100000; ++seq) {
    LockState lock;
    oracle::LatchModel latch;
    const double thr = rng.uniform();
    const std::size_t len = 1 + rng.index(30);
    for (std::size_t i = 0; i < len; ++i) {
      LockEvent e;
      switch (rng.index(5)) {
        case 0: e = LockEvent::reboot(); break;
        case 1: e = LockEvent::manual_unlock(); break;
        case 2:
        case 3: e = LockEvent::wake(); break;
        default:
          e = LockEvent::risk(rng.bernoulli(0.5) ? ClassLabel::low_risk : ClassLabel::high_risk,
                              rng.uniform());
      }
      lock = update_lock_state(lock, e, thr);
      latch.apply(e);
      if (e.kind == LockEventKind::wake && latch.latched) {
        ++checked_wakes;
        violations += !lock.displayed;
      }
    }
  }
  return {violations == 0,
          fmt("100000 sequences, %zu latched wakes checked, violations=%zu", checked_wakes, violations)};
}

Outcome default_deny(const std::vector<ScriptEvent>& script) {
  const Policy p = default_policy();
  std::vector<std::string> apps;
  for (const auto& [app, type] : p.rules.apps) apps.push_back(app);
  apps.push_back("com.unlisted.app");
  std::size_t uncovered = 0;
  std::size_t allowed_uncovered = 0;
  for (const auto& app : apps) {
    for (const auto& sensor : p.rules.objects()) {
      for (const auto& op : p.rules.operations()) {
        if (p.rules.find(p.rules.type_of(app), sensor, op)) continue;
        for (auto m : {ClassLabel::low_risk, ClassLabel::high_risk}) {
          for (auto x : {ClassLabel::low_exposure, ClassLabel::high_exposure}) {
            for (const bool shown : {false, true}) {
              ClassificationState st;
              st.update({Timestamp{}, Task::misuse, m, 1.0});
              st.update({Timestamp{}, Task::exposure, x, 1.0});
              LockState lock;
              lock.displayed = shown;
              lock.watermark = shown;
              ++uncovered;
              allowed_uncovered += decide_access(app, sensor, op, st, p.rules, p.thresholds, lock).allow;
            }
          }
        }
      }
    }
  }
  const auto report = replay_enforcement(script, oracle_classifier(), p);
  return {uncovered > 0 && allowed_uncovered == 0 && report.untrusted_high_exposure_allowed == 0,
          fmt("uncovered requests=%zu allowed=%zu; oracle replay: accesses=%zu leaks=%zu",
              uncovered, allowed_uncovered, report.accesses, report.untrusted_high_exposure_allowed)};
}

Outcome decision_latency() {
  const Policy p = default_policy();
  Rng rng(7);
  const std::vector<std::string> apps{"com.android.camera", "com.example.placeraider",
                                      "com.example.navigator", "com.example.fitness"};
  const std::vector<std::pair<std::string, std::string>> requests{
      {"camera", "take_picture"}, {"accelerometer", "read"}, {"gps", "read"},
      {"microphone", "record"}, {"magnetometer", "read"}};
  std::vector<double> ms;
  ms.reserve(10000);
  std::size_t allowed = 0;
  for (int i = 0; i < 10000; ++i) {
    ClassificationState st;
    st.update({Timestamp{}, Task::misuse,
               rng.bernoulli(0.5) ? ClassLabel::low_risk : ClassLabel::high_risk, rng.uniform()});
    st.update({Timestamp{}, Task::exposure,
               rng.bernoulli(0.5) ? ClassLabel::low_exposure : ClassLabel::high_exposure, rng.uniform()});
    LockState lock;
    lock.displayed = rng.bernoulli(0.5);
    const auto& app = apps[rng.index(apps.size())];
    const auto& [sensor, op] = requests[rng.index(requests.size())];
    const auto t0 = Clock::now();
    const Decision d = decide_access(app, sensor, op, st, p.rules, p.thresholds, lock);
    ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    allowed += d.allow;
  }
  const auto s = latency_stats(ms);
  return {s.p95_ms < 1.0, fmt("10000 calls, p95=%.4f ms mean=%.4f ms max=%.4f ms (limit p95 < 1 ms), allowed=%zu",
                              s.p95_ms, s.mean_ms, s.max_ms, allowed)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / "conxsense_acceptance";
  fs::remove_all(base);
  const Config cfg;
  std::vector<std::string> files[2];
  for (int run = 0; run < 2; ++run) {
    const auto scn = commuter_scenario(14, 42);
    const auto trace = generate_synthetic_trace(scn);
    const fs::path dir = base / std::to_string(run);
    files[run] = write_artifacts(run_pipeline(trace, cfg), cfg, dir);
    write_text(dir / "trace.jsonl", serialize_trace(trace));
    files[run].push_back("trace.jsonl");
    auto report = replay_enforcement(generate_enforcement_script(scn), oracle_classifier(), default_policy());
    report.latency = {};
    write_text(dir / "replay.json", dump_json(report_to_json(report)));
    files[run].push_back("replay.json");
  }
  std::size_t differing = 0;
  for (const auto& f : files[0]) differing += slurp(base / "0" / f) != slurp(base / "1" / f);
  fs::remove_all(base);
  return {files[0] == files[1] && differing == 0,
          fmt("%zu artifacts compared, differing=%zu", files[0].size(), differing)};
}

}  // namespace

int main() {
  const auto scn = commuter_scenario(14, 42);
  const auto trace = generate_synthetic_trace(scn);
  const auto pipeline = run_pipeline(trace, Config{});
  const auto script = generate_enforcement_script(scn);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"stay-point oracle equivalence", staypoint_oracle},
      {"grocery store CoI", grocery_example},
      {"jaccard and ROC math", jaccard_and_roc},
      {"classifier sanity", [&] { return classifier_sanity(pipeline); }},
      {"low-watermark safety", watermark_property},
      {"default-deny completeness", [&] { return default_deny(script); }},
      {"decision latency", decision_latency},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
