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

// Synthetic database workloads with known scaling surfaces, counter
// signatures and interference footprints.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rightsize/indexes.hpp"
#include "rightsize/interference.hpp"
#include "rightsize/node_model.hpp"
#include "rightsize/region.hpp"

namespace rightsize {

/// Saturating power-law throughput model:
///   f(c, m) = min(c, sat_c)^core_exponent * min(m, sat_m)^memory_exponent
struct SurfaceShape {
  int saturation_cores = 1;
  int saturation_memory_gb = 1;
  double core_exponent = 0.0;
  double memory_exponent = 0.0;

  double throughput_factor(ResourceSpec spec) const;

  friend bool operator==(const SurfaceShape&, const SurfaceShape&) = default;
};

struct WorkloadArchetype {
  int archetype_id = 0;
  SurfaceShape shape;
  double base_tps = 1000.0;
  /// Archetype-specific log-scale offsets of each counter.
  std::array<double, kNumIndexes> index_offsets{};
  /// Typical interference levels; workloads jitter around these.
  InterferenceProfile typical_profile;
  int llc_knee_ways = 0;

  /// Noise-free counter readings of this archetype running at `spec`.
  SystemIndexVector signature_at(ResourceSpec spec) const;

  friend bool operator==(const WorkloadArchetype&, const WorkloadArchetype&) = default;
};

/// Ground-truth usage rates and stress tolerances, in native units.
struct ResourceFootprint {
  double llc_kmps = 0.0;  // with the full LLC
  int llc_knee_ways = 0;
  double membw_gbps = 0.0;
  double disk_iops = 0.0;
  double network_gbps = 0.0;
  // Stress level (continuous) each bandwidth-like resource withstands.
  double membw_tolerance = 0.0;
  double disk_tolerance = 0.0;
  double network_tolerance = 0.0;

  friend bool operator==(const ResourceFootprint&, const ResourceFootprint&) = default;
};

struct SynthOptions {
  ConfigRegion region = ConfigRegion::default_region();
  ResourceSpec surface_base{6, 8};
  NodeModel node;
  /// Relative log-normal perturbation of each workload's scaling exponents.
  double surface_noise = 0.0;
  /// Max integer deviation of a workload's levels from its archetype.
  int profile_jitter = 1;
};

struct Workload {
  int workload_id = 0;
  int archetype_id = 0;
  std::uint64_t noise_seed = 0;
  ResourceSpec origin_spec;
  WorkloadArchetype archetype;
  SurfaceShape shape;  // archetype shape after per-workload noise
  ScalingSurface ground_truth_surface;
  InterferenceProfile ground_truth_profile;
  ResourceFootprint footprint;

  /// Transactions per second when running solo at `spec`.
  double throughput(ResourceSpec spec) const;
  /// throughput(spec) / throughput(reference).
  double speedup(ResourceSpec spec, ResourceSpec reference) const;
};

/// `count` archetypes with pairwise-distinct surfaces. Throws InvalidArgument
/// when count < 2.
std::vector<WorkloadArchetype> generate_archetypes(int count, std::uint64_t rng_seed);

/// Deterministic in (archetype, noise_seed, options).
Workload make_workload(const WorkloadArchetype& archetype, int workload_id, std::uint64_t noise_seed,
                       ResourceSpec origin_spec, const SynthOptions& options);

/// Counter readings of `workload` at `spec` with multiplicative log-normal
/// noise of relative scale `noise_sigma`. Deterministic in
/// (workload.noise_seed, spec). Throws OutOfRegion for specs off the grid.
SystemIndexVector observe_indexes(const Workload& workload, ResourceSpec spec, double noise_sigma,
                                  const ConfigRegion& region);

/// Builds the footprint whose simulated measurements reproduce `profile`.
/// `llc_knee_ways` must map onto profile[kLlc].sensitivity.
ResourceFootprint footprint_for_profile(const InterferenceProfile& profile, int llc_knee_ways,
                                        const NodeModel& node, std::uint64_t seed);

/// LLC sensitivity level for a knee expressed in ways.
int llc_sensitivity_level(int knee_ways, const NodeModel& node);

struct WorkloadSet {
  SynthOptions options;
  std::vector<WorkloadArchetype> archetypes;
  std::vector<Workload> workloads;
};

/// Workload i gets archetype i % archetype_count and a grid-valued origin.
WorkloadSet generate_workload_set(int archetype_count, int workload_count, std::uint64_t rng_seed,
                                  const SynthOptions& options);

}  // namespace rightsize
