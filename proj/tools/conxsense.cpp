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

// Command-line front end: trace generation, profiling, training,
// evaluation and policy decisions.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "conxsense/conxsense.hpp"

namespace fs = std::filesystem;
using namespace conxsense;

namespace {

struct CommonOptions {
  std::string trace;
  std::string config;
  std::string model;
  bool strict = false;
};

void add_trace_options(CLI::App* cmd, CommonOptions& o, bool with_model) {
  cmd->add_option("--trace", o.trace, "JSON Lines trace file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--config", o.config, "parameter JSON (defaults when omitted)")
      ->check(CLI::ExistingFile);
  cmd->add_flag("--strict", o.strict, "fail on the first malformed trace line");
  if (with_model) cmd->add_option("--model", o.model, "knn | nb | rf (overrides the config)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
}

Config load_config(const CommonOptions& o) {
  Config c = o.config.empty() ? Config{} : config_from_json(read_json(o.config));
  if (!o.model.empty()) {
    const auto kind = parse_model_kind(o.model);
    if (!kind) throw InvalidParams("unknown model '" + o.model + "'");
    c.model.kind = *kind;
  }
  return c;
}

ObservationSequence load_trace(const CommonOptions& o) {
  std::ifstream in(o.trace);
  if (!in) throw Error("cannot read " + o.trace);
  ParseOptions opts;
  opts.mode = o.strict ? ParseMode::strict : ParseMode::lenient;
  opts.user_id = fs::path(o.trace).stem().string();
  ParseResult r = parse_trace(in, opts);
  for (const auto& m : r.malformed) {
    std::cerr << "warning: " << o.trace << ":" << m.line_no << ": " << m.reason << "\n";
  }
  return std::move(r.sequence);
}

std::optional<Task> parse_task_option(const std::string& s) {
  if (s.empty() || s == "both") return std::nullopt;
  const auto t = parse_task(s);
  if (!t) throw InvalidParams("unknown task '" + s + "'");
  return t;
}

ScenarioConfig scenario_by_name(const std::string& name, int days, std::uint64_t seed) {
  if (name == "commuter") return commuter_scenario(days, seed);
  if (name == "grocery") {
    auto cfg = grocery_scenario(seed);
    cfg.days = days;
    return cfg;
  }
  throw InvalidParams("unknown scenario '" + name + "' (commuter, grocery)");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conxsense: context profiling, classification and access control"};
  app.require_subcommand(1);

  // generate
  std::string scenario = "commuter";
  int days = 14;
  std::uint64_t seed = 42;
  std::string out;
  std::string script_out;
  auto* gen = app.add_subcommand("generate", "write a synthetic trace");
  gen->add_option("--scenario", scenario, "commuter | grocery")->capture_default_str();
  gen->add_option("--days", days, "simulated days")->capture_default_str();
  gen->add_option("--seed", seed, "random seed")->capture_default_str();
  gen->add_option("-o,--output", out, "trace file (stdout when omitted)");
  gen->add_option("--script", script_out, "also write the enforcement script here");

  // run
  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "profile, evaluate and train; write all artifacts");
  add_trace_options(run, run_opts, true);
  std::string run_dir;
  run->add_option("-o,--output", run_dir, "output directory")->required();

  // profile
  CommonOptions prof_opts;
  bool dump_sp = false;
  bool dump_cois = false;
  auto* prof = app.add_subcommand("profile", "print CoI and device profiles as JSON");
  add_trace_options(prof, prof_opts, false);
  prof->add_flag("--dump-staypoints", dump_sp, "print stay points instead");
  prof->add_flag("--dump-cois", dump_cois, "print CoIs instead");

  // features
  CommonOptions feat_opts;
  std::string feat_task;
  std::string feat_out;
  auto* feat = app.add_subcommand("features", "print labelled feature vectors as CSV");
  add_trace_options(feat, feat_opts, false);
  feat->add_option("--task", feat_task, "misuse | exposure | both");
  feat->add_option("-o,--output", feat_out, "CSV file (stdout when omitted)");

  // train
  CommonOptions train_opts;
  std::string train_task;
  std::string train_out;
  auto* trn = app.add_subcommand("train", "fit a model on all feedback of one task");
  add_trace_options(trn, train_opts, true);
  trn->add_option("--task", train_task, "misuse | exposure")->required();
  trn->add_option("-o,--output", train_out, "model JSON (stdout when omitted)");

  // eval
  CommonOptions eval_opts;
  std::string eval_task;
  std::string eval_dir;
  std::size_t eval_folds = 0;
  auto* evl = app.add_subcommand("eval", "stratified cross-validation; write roc.csv and summary.json");
  add_trace_options(evl, eval_opts, true);
  evl->add_option("--task", eval_task, "misuse | exposure | both");
  evl->add_option("--folds", eval_folds, "fold count (overrides the config)");
  evl->add_option("-o,--output", eval_dir, "output directory")->required();

  // simulate
  std::string sim_policy;
  std::string sim_script;
  std::string sim_classifier = "model";
  CommonOptions sim_opts;
  auto* sim = app.add_subcommand("simulate", "replay an enforcement script against a policy");
  sim->add_option("--policy", sim_policy, "policy JSON (built-in default when omitted)")
      ->check(CLI::ExistingFile);
  sim->add_option("--script", sim_script, "enforcement script JSONL (generated when omitted)")
      ->check(CLI::ExistingFile);
  sim->add_option("--classifier", sim_classifier, "model | oracle | deny")->capture_default_str();
  sim->add_option("--trace", sim_opts.trace, "trace for the model classifier (generated when omitted)")
      ->check(CLI::ExistingFile);
  sim->add_option("--config", sim_opts.config, "parameter JSON")->check(CLI::ExistingFile);
  sim->add_option("--model", sim_opts.model, "knn | nb | rf");
  sim->add_option("--scenario", scenario, "scenario for generated inputs")->capture_default_str();
  sim->add_option("--days", days, "simulated days")->capture_default_str();
  sim->add_option("--seed", seed, "scenario seed")->capture_default_str();

  // decide
  std::string dec_policy;
  std::vector<std::string> dec_events;
  std::string dec_app;
  std::string dec_sensor;
  std::string dec_op;
  bool dec_locked = false;
  auto* dec = app.add_subcommand("decide", "decide one sensor access");
  dec->add_option("--policy", dec_policy, "policy JSON (built-in default when omitted)")
      ->check(CLI::ExistingFile);
  dec->add_option("--event", dec_events, "classification event JSON file or inline object")
      ->required();
  dec->add_option("--app", dec_app, "requesting app")->required();
  dec->add_option("--sensor", dec_sensor, "sensor object")->required();
  dec->add_option("--op", dec_op, "operation")->required();
  dec->add_flag("--lockscreen-displayed", dec_locked, "the lockscreen is currently shown");

  // defaults
  std::string defaults_what = "config";
  auto* defs = app.add_subcommand("defaults", "print the default config or policy JSON");
  defs->add_option("what", defaults_what, "config | policy")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const ScenarioConfig cfg = scenario_by_name(scenario, days, seed);
      ObservationSequence seq = generate_synthetic_trace(cfg);
      emit(out, serialize_trace(seq));
      if (!script_out.empty()) write_text(script_out, serialize_script(generate_enforcement_script(cfg)));
      return 0;
    }
    if (*run) {
      const Config cfg = load_config(run_opts);
      const PipelineResult r = run_pipeline(load_trace(run_opts), cfg);
      write_artifacts(r, cfg, run_dir);
      for (const auto& tr : r.tasks) {
        for (const auto& w : tr.eval.warnings) std::cerr << "warning: " << to_string(tr.task) << ": " << w << "\n";
        std::cout << to_string(tr.task) << ": n=" << tr.dataset.size()
                  << " auc=" << format_number(tr.eval.pooled_roc.auc) << "\n";
      }
      return 0;
    }
    if (*prof) {
      const Config cfg = load_config(prof_opts);
      const ContextModel m = build_context_model(load_trace(prof_opts), cfg.profiler);
      if (dump_sp) {
        std::cout << dump_json(staypoints_to_json(m));
      } else if (dump_cois) {
        std::cout << dump_json(cois_to_json(m.cois, m.profiles));
      } else {
        std::cout << dump_json(profiles_to_json(m.profiles));
      }
      return 0;
    }
    if (*feat) {
      const Config cfg = load_config(feat_opts);
      const ObservationSequence seq = load_trace(feat_opts);
      const ContextModel m = build_context_model(seq, cfg.profiler);
      const auto features_at = [&](Timestamp t) {
        return cfg.causal_features ? causal_features_at(seq, t, cfg.profiler) : m.features_at(t);
      };
      const auto only = parse_task_option(feat_task);
      std::string csv = features_csv_header();
      for (const Task task : {Task::misuse, Task::exposure}) {
        if (only && *only != task) continue;
        for (const auto& row : time_ordered(build_dataset(seq, features_at, task))) {
          csv += features_csv_row(row);
        }
      }
      emit(feat_out, csv);
      return 0;
    }
    if (*trn) {
      const Config cfg = load_config(train_opts);
      const ObservationSequence seq = load_trace(train_opts);
      const ContextModel m = build_context_model(seq, cfg.profiler);
      const auto task = parse_task_option(train_task);
      if (!task) throw InvalidParams("train needs a single --task");
      const auto data = time_ordered(
          build_dataset(seq, [&](Timestamp t) { return m.features_at(t); }, *task));
      emit(train_out, dump_json(model_to_json(train(cfg.model, data))));
      return 0;
    }
    if (*evl) {
      Config cfg = load_config(eval_opts);
      if (eval_folds) cfg.folds = eval_folds;
      cfg.validate();
      const ObservationSequence seq = load_trace(eval_opts);
      const ContextModel m = build_context_model(seq, cfg.profiler);
      const auto only = parse_task_option(eval_task);
      fs::create_directories(eval_dir);
      for (const Task task : {Task::misuse, Task::exposure}) {
        if (only && *only != task) continue;
        TaskResult tr;
        tr.task = task;
        tr.dataset = time_ordered(
            build_dataset(seq, [&](Timestamp t) { return m.features_at(t); }, task));
        tr.eval = cross_validate(cfg.model, tr.dataset, cfg.folds);
        for (const auto& w : tr.eval.warnings) std::cerr << "warning: " << w << "\n";
        const std::string suffix = only ? "" : "_" + std::string(to_string(task));
        write_text(fs::path(eval_dir) / ("roc" + suffix + ".csv"), roc_csv(tr.eval.pooled_roc));
        write_text(fs::path(eval_dir) / ("summary" + suffix + ".json"),
                   dump_json(summary_to_json(tr, cfg)));
        std::cout << to_string(task) << ": auc=" << format_number(tr.eval.pooled_roc.auc) << "\n";
      }
      return 0;
    }
    if (*sim) {
      const Config cfg = load_config(sim_opts);
      Policy policy = default_policy();
      if (sim_policy.empty()) {
        policy.thresholds = cfg.thresholds;
      } else {
        policy = policy_from_json(read_json(sim_policy));
      }
      const ScenarioConfig scn = scenario_by_name(scenario, days, seed);
      std::vector<ScriptEvent> script;
      if (sim_script.empty()) {
        script = generate_enforcement_script(scn);
      } else {
        std::ifstream in(sim_script);
        script = parse_script(in);
      }
      ContextClassifier classifier;
      if (sim_classifier == "oracle") {
        classifier = oracle_classifier();
      } else if (sim_classifier == "deny") {
        classifier = always_deny_classifier();
      } else if (sim_classifier == "model") {
        const ObservationSequence seq =
            sim_opts.trace.empty() ? generate_synthetic_trace(scn) : load_trace(sim_opts);
        auto context = std::make_shared<const ContextModel>(build_context_model(seq, cfg.profiler));
        const auto fit = [&](Task task) {
          const auto data = time_ordered(
              build_dataset(seq, [&](Timestamp t) { return context->features_at(t); }, task));
          return std::make_shared<const TrainedModel>(train(cfg.model, data));
        };
        classifier = model_classifier(context, fit(Task::misuse), fit(Task::exposure));
      } else {
        throw InvalidParams("unknown classifier '" + sim_classifier + "'");
      }
      const EnforcementReport rep = replay_enforcement(script, classifier, policy, cfg.replay);
      std::cout << dump_json(report_to_json(rep));
      return 0;
    }
    if (*dec) {
      const Policy policy = dec_policy.empty() ? default_policy() : policy_from_json(read_json(dec_policy));
      ClassificationState state;
      for (const auto& e : dec_events) {
        const std::string text = fs::exists(e) ? read_file(e) : e;
        const auto j = nlohmann::json::parse(text);
        if (j.is_array()) {
          for (const auto& item : j) state.update(classification_event_from_json(item));
        } else {
          state.update(classification_event_from_json(j));
        }
      }
      LockState lock;
      lock.displayed = dec_locked;
      lock.watermark = dec_locked;
      const Decision d =
          decide_access(dec_app, dec_sensor, dec_op, state, policy.rules, policy.thresholds, lock);
      std::cout << decision_to_json(d).dump() << "\n";
      return 0;
    }
    if (*defs) {
      if (defaults_what == "config") {
        std::cout << dump_json(config_to_json(Config{}));
      } else if (defaults_what == "policy") {
        std::cout << dump_json(policy_to_json(default_policy()));
      } else {
        throw InvalidParams("defaults: expected 'config' or 'policy'");
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
