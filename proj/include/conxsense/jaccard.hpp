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

#include <cstddef>
#include <iterator>
#include <ranges>

#include "conxsense/error.hpp"

namespace conxsense {

/// Jaccard distance (|A ∪ B| - |A ∩ B|) / |A ∪ B| between two sorted,
/// duplicate-free ranges (e.g. std::set). Throws BothEmpty when both are
/// empty.
template <std::ranges::input_range A, std::ranges::input_range B>
double jaccard_distance(const A& a, const B& b) {
  std::size_t intersection = 0;
  std::size_t uni = 0;
  auto ia = std::ranges::begin(a);
  auto ib = std::ranges::begin(b);
  const auto ea = std::ranges::end(a);
  const auto eb = std::ranges::end(b);
  while (ia != ea && ib != eb) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++intersection;
      ++ia;
      ++ib;
    }
    ++uni;
  }
  uni += static_cast<std::size_t>(std::ranges::distance(ia, ea));
  uni += static_cast<std::size_t>(std::ranges::distance(ib, eb));
  if (uni == 0) throw BothEmpty();
  return static_cast<double>(uni - intersection) / static_cast<double>(uni);
}

}  // namespace conxsense
