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

// Pressure/sensitivity estimation for the four shared resources, driven
// through an abstract node probe. A simulated probe backed by a workload's
// footprint is provided; real backends implement ProbeInterface.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "rightsize/interference.hpp"
#include "rightsize/node_model.hpp"
#include "rightsize/workload_synth.hpp"

namespace rightsize {

/// kmps at each way count, index ways-1.
struct KmpsTrack {
  std::vector<double> kmps;

  friend bool operator==(const KmpsTrack&, const KmpsTrack&) = default;
};

struct ReferenceTrack {
  int level = 0;
  KmpsTrack track;

  friend bool operator==(const ReferenceTrack&, const ReferenceTrack&) = default;
};

/// A node running one target workload plus whatever stressor is applied.
/// Implementations throw ProbeError when a measurement cannot be taken.
class ProbeInterface {
 public:
  virtual ~ProbeInterface() = default;

  virtual int llc_ways() const = 0;
  /// Restricts the target to `ways` LLC ways and returns its kmps.
  virtual double set_llc_ways(int ways) = 0;
  /// Runs the stressor for `resource` at `level` (0 = none) and returns the
  /// target's usage of that resource.
  virtual double apply_stress(SharedResource resource, int level) = 0;
  /// Current usage in native units: kmps, GB/s, IOPS, Gb/s.
  virtual double read_usage(SharedResource resource) = 0;

  virtual double phy_mbw_gbps() const = 0;
  virtual double phy_nbw_gbps() const = 0;
  virtual double iops_scaler() const = 0;
};

/// Probe whose responses come from a ResourceFootprint and a NodeModel.
/// With noise_sigma > 0 every reading gets multiplicative log-normal noise.
class SimulatedProbe final : public ProbeInterface {
 public:
  SimulatedProbe(ResourceFootprint footprint, NodeModel node, double noise_sigma = 0.0,
                 std::uint64_t noise_seed = 0);

  int llc_ways() const override { return node_.llc_ways; }
  double set_llc_ways(int ways) override;
  double apply_stress(SharedResource resource, int level) override;
  double read_usage(SharedResource resource) override;

  double phy_mbw_gbps() const override { return node_.phy_mbw_gbps; }
  double phy_nbw_gbps() const override { return node_.phy_nbw_gbps; }
  double iops_scaler() const override { return node_.iops_scaler; }

 private:
  double solo_usage(SharedResource resource) const;
  double tolerance(SharedResource resource) const;
  double noisy(double value);

  ResourceFootprint footprint_;
  NodeModel node_;
  double noise_sigma_;
  std::mt19937_64 rng_;
  int ways_;
  SharedResource stressed_ = SharedResource::kLlc;
  int stress_level_ = 0;
};

/// Offline kmps tracks of the cache stressor, levels 0..node.levels.
std::vector<ReferenceTrack> calibrate_reference_tracks(const NodeModel& node);

struct LlcEstimate {
  ResourceLevels levels;
  KmpsTrack track;
  double distance = 0.0;  // to the matched reference track
  int sensitive_ways = 0;
};

struct BandwidthEstimate {
  ResourceLevels levels;
  double usage = 0.0;
  int max_level = 0;  // highest stress level withstood
};

/// Pressure = level of the closest reference track (sum of squared kmps
/// differences); sensitivity = way count where kmps first exceeds 1.1x the
/// full-LLC value scanning downward, mapped onto the level scale. The level
/// count is the highest reference level.
LlcEstimate quantify_llc(ProbeInterface& probe, std::span<const ReferenceTrack> reference_tracks);

BandwidthEstimate quantify_membw(ProbeInterface& probe, int n_levels);
BandwidthEstimate quantify_disk(ProbeInterface& probe, int n_levels, double iops_scaler);
BandwidthEstimate quantify_network(ProbeInterface& probe, int n_levels);

/// Usage drop that counts as degradation.
inline constexpr double kDegradationThreshold = 0.10;

struct EstimatorConfig {
  int levels = 20;
  std::vector<ReferenceTrack> reference_tracks;

  static EstimatorConfig defaults(const NodeModel& node = {});
};

InterferenceProfile build_profile(ProbeInterface& probe, const EstimatorConfig& config);

}  // namespace rightsize
