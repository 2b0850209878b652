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

#include <fstream>

#include "conxsense/config_io.hpp"
#include "conxsense/policy_io.hpp"

using namespace conxsense;
using nlohmann::json;

TEST(Config, DefaultsRoundTrip) {
  const Config c;
  const auto j = config_to_json(c);
  const Config back = config_from_json(json::parse(j.dump()));
  EXPECT_EQ(config_to_json(back).dump(), j.dump());
}

TEST(Config, DefaultValues) {
  const auto j = config_to_json(Config{});
  EXPECT_EQ(j["staypoints"]["r_sp_m"], 100.0);
  EXPECT_EQ(j["staypoints"]["t_min_sp_s"], 600.0);
  EXPECT_EQ(j["coi"]["gps_max_m"], 100.0);
  EXPECT_EQ(j["coi"]["f_min_coi"], 5);
  EXPECT_EQ(j["coi"]["gps_count_rule"], "greater");
  EXPECT_EQ(j["coi"]["wifi_count_rule"], "greater_equal");
  EXPECT_EQ(j["context"]["eps_visit_s"], 300.0);
  EXPECT_EQ(j["context"]["t_min_famdev_s"], 1800.0);
  EXPECT_EQ(j["model"]["kind"], "random_forest");
  EXPECT_EQ(j["evaluation"]["folds"], 10);
}

TEST(Config, UnknownKeysRejected) {
  EXPECT_THROW(config_from_json(json::parse(R"({"staypoint":{}})")), InvalidParams);
  EXPECT_THROW(config_from_json(json::parse(R"({"staypoints":{"radius":10}})")), InvalidParams);
  EXPECT_THROW(config_from_json(json::parse(R"({"coi":{"gps_count_rule":"sometimes"}})")),
               InvalidParams);
}

TEST(Config, PartialOverride) {
  const Config c = config_from_json(
      json::parse(R"({"staypoints":{"r_sp_m":80},"model":{"kind":"knn","knn_k":7}})"));
  EXPECT_EQ(c.profiler.staypoints.r_sp_m, 80.0);
  EXPECT_EQ(c.profiler.staypoints.t_min_sp, Config{}.profiler.staypoints.t_min_sp);
  EXPECT_EQ(c.model.kind, ModelKind::knn);
  EXPECT_EQ(c.model.knn_k, 7u);
  EXPECT_EQ(c.model.rf_trees, Config{}.model.rf_trees);
}

TEST(Config, InvalidValuesRejected) {
  EXPECT_THROW(config_from_json(json::parse(R"({"staypoints":{"r_sp_m":-1}})")), InvalidParams);
  EXPECT_THROW(config_from_json(json::parse(R"({"evaluation":{"folds":1}})")), InvalidParams);
}

TEST(Config, ShippedFilesMatchDefaults) {
  std::ifstream config_file(CONXSENSE_CONFIG_DIR "/defaults.json");
  ASSERT_TRUE(config_file.good());
  EXPECT_EQ(config_to_json(config_from_json(json::parse(config_file))).dump(),
            config_to_json(Config{}).dump());

  std::ifstream policy_file(CONXSENSE_CONFIG_DIR "/policy.json");
  ASSERT_TRUE(policy_file.good());
  EXPECT_EQ(policy_to_json(policy_from_json(json::parse(policy_file))).dump(),
            policy_to_json(default_policy()).dump());
}
