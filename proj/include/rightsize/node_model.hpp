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

#pragma once

#include <vector>

namespace rightsize {

/// Physical constants of one simulated node and the shape of its shared
/// resource response curves. Both the workload synthesizer (to build ground
/// truth) and the simulated probe (to answer stress queries) read these.
struct NodeModel {
  int llc_ways = 11;
  int levels = 20;                  // pressure/sensitivity levels per resource
  double phy_mbw_gbps = 100.0;
  double phy_nbw_gbps = 25.0;
  double iops_scaler = 1000.0;      // IOPS per disk pressure level
  double kmps_per_level = 40.0;     // full-LLC kmps of a level-1 cache stressor
  double stressor_slope = 0.03;     // stressor miss growth per removed way
  double stress_response = 0.25;    // usage falls as 1/(1 + k*(L - tolerance))

  double disk_iops_ceiling() const { return iops_scaler * levels; }

  /// Shape of a level-1 cache stressor's kmps track, indexed by ways-1.
  std::vector<double> stressor_shape() const;
  /// kmps track of the offline stressor at the given pressure level.
  std::vector<double> reference_track(int level) const;
  /// Unit-intensity kmps track of a workload whose misses climb at and
  /// below `knee_ways` (0 = cache insensitive).
  std::vector<double> workload_shape(int knee_ways) const;
  /// Full-LLC kmps that makes the workload's track project onto the
  /// stressor family at exactly `level_position` (a real level).
  double kmps_for_level(double level_position, int knee_ways) const;
  /// Workload usage when a stressor at `stress_level` runs alongside it.
  double stressed_usage(double solo_usage, double tolerance, int stress_level) const;
};

}  // namespace rightsize
