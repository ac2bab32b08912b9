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

#include "rightsize/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rightsize/common.hpp"

namespace rightsize {

SimulatedProbe::SimulatedProbe(ResourceFootprint footprint, NodeModel node, double noise_sigma,
                               std::uint64_t noise_seed)
    : footprint_(footprint), node_(node), noise_sigma_(noise_sigma), rng_(noise_seed), ways_(node.llc_ways) {
  require(noise_sigma >= 0.0, "probe noise must be non-negative");
  require(node.llc_ways >= 1 && node.levels >= 1, "node model needs ways and levels");
}

double SimulatedProbe::noisy(double value) {
  if (noise_sigma_ == 0.0) return value;
  std::normal_distribution<double> gauss(0.0, noise_sigma_);
  return value * std::exp(gauss(rng_));
}

double SimulatedProbe::solo_usage(SharedResource resource) const {
  switch (resource) {
    case SharedResource::kLlc:
      return footprint_.llc_kmps * node_.workload_shape(footprint_.llc_knee_ways)[static_cast<std::size_t>(ways_ - 1)];
    case SharedResource::kMemoryBandwidth:
      return footprint_.membw_gbps;
    case SharedResource::kDisk:
      return footprint_.disk_iops;
    case SharedResource::kNetwork:
      return footprint_.network_gbps;
  }
  return 0.0;
}

double SimulatedProbe::tolerance(SharedResource resource) const {
  switch (resource) {
    case SharedResource::kMemoryBandwidth:
      return footprint_.membw_tolerance;
    case SharedResource::kDisk:
      return footprint_.disk_tolerance;
    case SharedResource::kNetwork:
      return footprint_.network_tolerance;
    case SharedResource::kLlc:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

double SimulatedProbe::set_llc_ways(int ways) {
  if (ways < 1 || ways > node_.llc_ways) {
    throw ProbeError("cannot allocate " + std::to_string(ways) + " LLC ways");
  }
  ways_ = ways;
  return read_usage(SharedResource::kLlc);
}

double SimulatedProbe::apply_stress(SharedResource resource, int level) {
  if (level < 0 || level > node_.levels) {
    throw ProbeError("stress level " + std::to_string(level) + " out of range");
  }
  stressed_ = resource;
  stress_level_ = level;
  return read_usage(resource);
}

double SimulatedProbe::read_usage(SharedResource resource) {
  double u = solo_usage(resource);
  if (resource == stressed_ && stress_level_ > 0 && resource != SharedResource::kLlc) {
    u = node_.stressed_usage(u, tolerance(resource), stress_level_);
  }
  return noisy(u);
}

std::vector<ReferenceTrack> calibrate_reference_tracks(const NodeModel& node) {
  std::vector<ReferenceTrack> out;
  for (int level = 0; level <= node.levels; ++level) out.push_back({level, {node.reference_track(level)}});
  return out;
}

LlcEstimate quantify_llc(ProbeInterface& probe, std::span<const ReferenceTrack> reference_tracks) {
  require(!reference_tracks.empty(), "quantify_llc: no reference tracks");
  const int ways = probe.llc_ways();
  int n_levels = 0;
  for (const auto& r : reference_tracks) {
    require(static_cast<int>(r.track.kmps.size()) == ways, "quantify_llc: reference track length differs from ways");
    require(r.level >= 0, "quantify_llc: negative reference level");
    n_levels = std::max(n_levels, r.level);
  }

  LlcEstimate est;
  est.track.kmps.assign(static_cast<std::size_t>(ways), 0.0);
  for (int w = ways; w >= 1; --w) est.track.kmps[static_cast<std::size_t>(w - 1)] = probe.set_llc_ways(w);
  probe.set_llc_ways(ways);

  est.distance = std::numeric_limits<double>::infinity();
  for (const auto& r : reference_tracks) {
    double d = 0.0;
    for (std::size_t i = 0; i < est.track.kmps.size(); ++i) {
      const double diff = est.track.kmps[i] - r.track.kmps[i];
      d += diff * diff;
    }
    if (d < est.distance || (d == est.distance && r.level < est.levels.pressure)) {
      est.distance = d;
      est.levels.pressure = r.level;
    }
  }

  const double full = est.track.kmps.back();
  for (int w = ways - 1; w >= 1; --w) {
    if (est.track.kmps[static_cast<std::size_t>(w - 1)] > (1.0 + kDegradationThreshold) * full) {
      est.sensitive_ways = w;
      break;
    }
  }
  est.levels.sensitivity =
      clamp_level(round_half_up(static_cast<double>(est.sensitive_ways) * n_levels / ways), n_levels);
  return est;
}

namespace {

template <typename PressureFn>
BandwidthEstimate sweep(ProbeInterface& probe, SharedResource resource, int n_levels, PressureFn pressure) {
  BandwidthEstimate est;
  est.usage = probe.apply_stress(resource, 0);
  est.levels.pressure = clamp_level(round_half_up(pressure(est.usage)), n_levels);
  est.max_level = n_levels;
  if (est.usage > 0.0) {
    for (int level = 1; level <= n_levels; ++level) {
      const double u = probe.apply_stress(resource, level);
      if (u <= (1.0 - kDegradationThreshold) * est.usage) {
        est.max_level = level - 1;
        break;
      }
    }
    probe.apply_stress(resource, 0);
  }
  est.levels.sensitivity = n_levels - est.max_level;
  return est;
}

}  // namespace

BandwidthEstimate quantify_membw(ProbeInterface& probe, int n_levels) {
  require(n_levels >= 1, "quantify_membw: need at least one level");
  const double phy = probe.phy_mbw_gbps();
  require(phy > 0.0, "quantify_membw: physical memory bandwidth must be positive");
  return sweep(probe, SharedResource::kMemoryBandwidth, n_levels, [&](double u) { return n_levels * u / phy; });
}

BandwidthEstimate quantify_disk(ProbeInterface& probe, int n_levels, double iops_scaler) {
  require(n_levels >= 1, "quantify_disk: need at least one level");
  require(iops_scaler > 0.0, "quantify_disk: IOPS scaler must be positive");
  return sweep(probe, SharedResource::kDisk, n_levels, [&](double u) { return u / iops_scaler; });
}

BandwidthEstimate quantify_network(ProbeInterface& probe, int n_levels) {
  require(n_levels >= 1, "quantify_network: need at least one level");
  const double phy = probe.phy_nbw_gbps();
  require(phy > 0.0, "quantify_network: physical network bandwidth must be positive");
  return sweep(probe, SharedResource::kNetwork, n_levels, [&](double u) { return n_levels * u / phy; });
}

EstimatorConfig EstimatorConfig::defaults(const NodeModel& node) {
  return EstimatorConfig{node.levels, calibrate_reference_tracks(node)};
}

InterferenceProfile build_profile(ProbeInterface& probe, const EstimatorConfig& config) {
  require(config.levels >= 1, "build_profile: need at least one level");
  InterferenceProfile p;
  p[SharedResource::kLlc] = quantify_llc(probe, config.reference_tracks).levels;
  p[SharedResource::kMemoryBandwidth] = quantify_membw(probe, config.levels).levels;
  p[SharedResource::kDisk] = quantify_disk(probe, config.levels, probe.iops_scaler()).levels;
  p[SharedResource::kNetwork] = quantify_network(probe, config.levels).levels;
  return p;
}

}  // namespace rightsize
