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

#include "rightsize/node_model.hpp"

#include <algorithm>

#include "rightsize/common.hpp"

namespace rightsize {

std::vector<double> NodeModel::stressor_shape() const {
  std::vector<double> shape(static_cast<std::size_t>(llc_ways));
  for (int w = 1; w <= llc_ways; ++w) {
    shape[static_cast<std::size_t>(w - 1)] = 1.0 + stressor_slope * (llc_ways - w);
  }
  return shape;
}

std::vector<double> NodeModel::reference_track(int level) const {
  auto track = stressor_shape();
  for (double& v : track) v *= kmps_per_level * level;
  return track;
}

std::vector<double> NodeModel::workload_shape(int knee_ways) const {
  require(knee_ways >= 0 && knee_ways < llc_ways, "knee must lie in [0, ways)");
  std::vector<double> shape(static_cast<std::size_t>(llc_ways), 1.0);
  // Any way count at or below the knee misses >= 12% more than the full LLC.
  for (int w = 1; w <= knee_ways; ++w) {
    shape[static_cast<std::size_t>(w - 1)] = 1.12 + 0.06 * (knee_ways - w);
  }
  return shape;
}

double NodeModel::kmps_for_level(double level_position, int knee_ways) const {
  const auto ref = stressor_shape();
  const auto own = workload_shape(knee_ways);
  double ref_sq = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    ref_sq += ref[i] * ref[i];
    cross += own[i] * ref[i];
  }
  return std::max(0.0, level_position) * kmps_per_level * ref_sq / cross;
}

double NodeModel::stressed_usage(double solo_usage, double tolerance, int stress_level) const {
  const double excess = std::max(0.0, stress_level - tolerance);
  return solo_usage / (1.0 + stress_response * excess);
}

}  // namespace rightsize
