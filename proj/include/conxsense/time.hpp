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

#include <chrono>
#include <cmath>
#include <cstdint>

namespace conxsense {

/// All timestamps are UTC epoch time quantized to whole milliseconds, so that
/// durations can be summed without floating-point drift.
using Duration = std::chrono::milliseconds;
using Timestamp = std::chrono::sys_time<Duration>;

inline Timestamp from_seconds(double s) {
  return Timestamp{Duration{static_cast<std::int64_t>(std::llround(s * 1000.0))}};
}

inline double to_seconds(Timestamp t) {
  return static_cast<double>(t.time_since_epoch().count()) / 1000.0;
}

inline double to_seconds(Duration d) {
  return static_cast<double>(d.count()) / 1000.0;
}

inline Duration seconds(double s) {
  return Duration{static_cast<std::int64_t>(std::llround(s * 1000.0))};
}

}  // namespace conxsense
