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

#include "conxsense/classifier/cross_validation.hpp"
#include "conxsense/classifier/model.hpp"
#include "conxsense/classifier/model_io.hpp"
#include "conxsense/classifier/roc.hpp"
#include "conxsense/coi.hpp"
#include "conxsense/config_io.hpp"
#include "conxsense/enforcement.hpp"
#include "conxsense/error.hpp"
#include "conxsense/features.hpp"
#include "conxsense/generator.hpp"
#include "conxsense/geo.hpp"
#include "conxsense/jaccard.hpp"
#include "conxsense/pipeline.hpp"
#include "conxsense/policy.hpp"
#include "conxsense/policy_io.hpp"
#include "conxsense/profiler.hpp"
#include "conxsense/random.hpp"
#include "conxsense/scenario.hpp"
#include "conxsense/social_context.hpp"
#include "conxsense/staypoints.hpp"
#include "conxsense/time.hpp"
#include "conxsense/trace.hpp"
