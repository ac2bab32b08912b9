// Copyright 2026 The Rightsize Authors.
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

// Small builders shared by the unit tests.

#pragma once

#include <functional>
#include <random>
#include <vector>

#include "rightsize/interference.hpp"
#include "rightsize/region.hpp"

namespace rightsize::testing {

inline ScalingSurface surface_from(const ConfigRegion& region, ResourceSpec base,
                                   const std::function<double(ResourceSpec)>& throughput) {
  std::vector<double> t;
  for (std::size_t i = 0; i < region.size(); ++i) t.push_back(throughput(region.at(i)));
  return ScalingSurface::from_throughput(region, base, t);
}

inline InterferenceProfile random_profile(std::mt19937_64& rng, int max_level = 20) {
  std::uniform_int_distribution<int> level(0, max_level);
  InterferenceProfile p;
  for (auto& lv : p.levels) {
    lv.pressure = level(rng);
    lv.sensitivity = level(rng);
  }
  return p;
}

inline InterferenceProfile uniform_profile(int pressure, int sensitivity) {
  InterferenceProfile p;
  for (auto& lv : p.levels) lv = {pressure, sensitivity};
  return p;
}

}  // namespace rightsize::testing
