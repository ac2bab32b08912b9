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

#include "rightsize/workload_synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rightsize/common.hpp"

namespace rightsize {

namespace {

// Log-scale counter model. Each counter is
//   log x = base + vis(spec) * (shape terms + archetype offset) + load terms
// where the shape terms depend on the archetype's scaling parameters and the
// load terms on how busy the instance is at `spec`.
struct CounterLoading {
  double base;
  double core_exp;
  double mem_exp;
  double sat_cores;  // per saturation_cores / 12
  double sat_mem;    // per saturation_memory_gb / 16
  double core_util;  // per log(min(c, sat_c) / c)
  double mem_util;   // per log(min(m, sat_m) / m)
  double log_tps;    // per log(tps / 1000)
};

constexpr std::array<CounterLoading, kNumIndexes> kLoadings = {{
    {0.0, 0.9, -0.6, 0.3, 0.0, 0.4, 0.0, 0.0},     // ipc
    {9.0, -0.2, 0.8, 0.0, 0.5, 0.0, 0.3, 0.6},     // dtlb_store_misses
    {13.0, -0.3, 0.9, 0.0, 0.4, 0.0, 0.2, 0.7},    // cache_misses
    {11.0, 0.1, 0.6, 0.2, 0.3, 0.0, 0.3, 0.8},     // node_stores
    {16.0, -0.4, 0.5, 0.0, -0.8, 0.0, 0.6, 0.9},   // io_read_bytes
    {7.0, -0.3, 0.4, 0.0, -0.6, 0.0, 0.5, 0.9},    // io_serviced_read
    {20.0, 0.0, 0.7, 0.0, 1.2, 0.0, 0.8, 0.1},     // memory_usage
    {3.0, 1.0, -0.3, 1.0, 0.0, 1.0, 0.0, 0.3},     // cpu_usage
    {8.0, -0.2, 0.6, 0.0, 0.6, 0.0, 0.4, 0.4},     // page_fault
    {10.0, -0.1, 0.7, 0.0, 0.5, 0.0, 0.2, 0.6},    // dtlb_load_misses
    {14.5, 0.2, 0.5, 0.2, 0.2, 0.1, 0.1, 0.8},     // cache_references
    {11.5, 0.1, 0.7, 0.1, 0.4, 0.0, 0.3, 0.8},     // node_loads
    {15.0, -0.3, 0.3, 0.0, -0.5, 0.0, 0.4, 0.9},   // io_write_bytes
    {6.5, -0.2, 0.3, 0.0, -0.4, 0.0, 0.4, 0.9},    // io_serviced_write
    {17.0, 0.0, 0.4, 0.0, 0.6, 0.0, 0.5, 0.5},     // dirty_memory
}};

// Near the smallest specification every workload is bottlenecked and the
// counters of different archetypes look alike.
double visibility(ResourceSpec spec) {
  const double c = 1.0 - 0.5 * std::exp(-(spec.cores - 1) / 2.0);
  const double m = 1.0 - 0.5 * std::exp(-(spec.memory_gb - 2) / 3.0);
  return c * m;
}

std::vector<double> grid_throughput(const SurfaceShape& shape, const ConfigRegion& region) {
  std::vector<double> t(region.size());
  for (std::size_t i = 0; i < region.size(); ++i) t[i] = shape.throughput_factor(region.at(i));
  return t;
}

double relative_gap(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] / b[i] - 1.0);
  return sum / static_cast<double>(a.size());
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(c)};
  return std::mt19937_64(seq);
}

constexpr double kMinArchetypeGap = 0.04;

}  // namespace

double SurfaceShape::throughput_factor(ResourceSpec spec) const {
  const double c = std::min(spec.cores, saturation_cores);
  const double m = std::min(spec.memory_gb, saturation_memory_gb);
  return std::pow(c, core_exponent) * std::pow(m, memory_exponent);
}

SystemIndexVector WorkloadArchetype::signature_at(ResourceSpec spec) const {
  const double vis = visibility(spec);
  const double core_util = std::log(std::min(spec.cores, shape.saturation_cores) / double(spec.cores));
  const double mem_util =
      std::log(std::min(spec.memory_gb, shape.saturation_memory_gb) / double(spec.memory_gb));
  const double log_tps = std::log(base_tps * shape.throughput_factor(spec) / 1000.0);
  SystemIndexVector out;
  for (std::size_t j = 0; j < kNumIndexes; ++j) {
    const auto& l = kLoadings[j];
    const double shape_terms = l.core_exp * shape.core_exponent + l.mem_exp * shape.memory_exponent +
                               l.sat_cores * shape.saturation_cores / 12.0 +
                               l.sat_mem * shape.saturation_memory_gb / 16.0;
    const double load_terms = l.core_util * core_util + l.mem_util * mem_util + l.log_tps * log_tps;
    out.values[j] = std::exp(l.base + vis * (shape_terms + index_offsets[j]) + load_terms);
  }
  auto& misses = out[IndexId::kCacheMisses];
  misses = std::min(misses, out[IndexId::kCacheReferences]);
  return out;
}

double Workload::throughput(ResourceSpec spec) const {
  return archetype.base_tps * shape.throughput_factor(spec);
}

double Workload::speedup(ResourceSpec spec, ResourceSpec reference) const {
  return shape.throughput_factor(spec) / shape.throughput_factor(reference);
}

int llc_sensitivity_level(int knee_ways, const NodeModel& node) {
  return round_half_up(static_cast<double>(knee_ways) * node.levels / node.llc_ways);
}

std::vector<WorkloadArchetype> generate_archetypes(int count, std::uint64_t rng_seed) {
  require(count >= 2, "archetype count must be at least 2");
  const ConfigRegion region = ConfigRegion::default_region();
  const NodeModel node;
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<int> sat_cores(2, 12);
  std::uniform_int_distribution<int> sat_mem(2, 16);
  std::uniform_real_distribution<double> core_exp(0.3, 1.0);
  std::uniform_real_distribution<double> mem_exp(0.1, 0.8);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<WorkloadArchetype> out;
  std::vector<std::vector<double>> accepted;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 100000) throw InvalidArgument("cannot generate that many distinct archetypes");
    SurfaceShape shape{sat_cores(rng), sat_mem(rng), core_exp(rng), mem_exp(rng)};
    auto t = grid_throughput(shape, region);
    const double base = t[region.require_index({6, 8})];
    for (double& v : t) v /= base;
    bool distinct = true;
    for (const auto& other : accepted) {
      if (std::min(relative_gap(t, other), relative_gap(other, t)) < kMinArchetypeGap) {
        distinct = false;
        break;
      }
    }
    if (!distinct) continue;
    accepted.push_back(std::move(t));

    WorkloadArchetype a;
    a.archetype_id = static_cast<int>(out.size());
    a.shape = shape;
    a.base_tps = 1000.0 * std::exp(0.5 * gauss(rng));
    for (double& o : a.index_offsets) o = 0.4 * gauss(rng);

    // One dominant shared resource per archetype: heavy for half of them,
    // light for the rest, near-idle on the others. Half of the archetypes
    // are fragile on one resource and tolerant elsewhere.
    std::uniform_int_distribution<int> pick(0, kNumSharedResources - 1);
    std::bernoulli_distribution coin(0.5);
    const int dominant = pick(rng);
    const bool heavy = coin(rng);
    const int fragile = coin(rng) ? pick(rng) : -1;
    for (std::size_t r = 0; r < kNumSharedResources; ++r) {
      auto& lv = a.typical_profile.levels[r];
      const bool dom = static_cast<int>(r) == dominant;
      lv.pressure = dom ? (heavy ? std::uniform_int_distribution<int>(4, 16)(rng)
                                 : std::uniform_int_distribution<int>(2, 5)(rng))
                        : std::uniform_int_distribution<int>(0, 1)(rng);
      lv.sensitivity = static_cast<int>(r) == fragile ? std::uniform_int_distribution<int>(8, 16)(rng)
                                                      : std::uniform_int_distribution<int>(0, 1)(rng);
    }
    a.llc_knee_ways = fragile == static_cast<int>(SharedResource::kLlc)
                          ? std::uniform_int_distribution<int>(5, 9)(rng)
                          : 0;
    a.typical_profile[SharedResource::kLlc].sensitivity = llc_sensitivity_level(a.llc_knee_ways, node);
    out.push_back(std::move(a));
  }
  return out;
}

ResourceFootprint footprint_for_profile(const InterferenceProfile& profile, int llc_knee_ways,
                                        const NodeModel& node, std::uint64_t seed) {
  require(profile.within(node.levels), "profile levels out of range");
  require(llc_sensitivity_level(llc_knee_ways, node) == profile[SharedResource::kLlc].sensitivity,
          "LLC knee does not match LLC sensitivity level");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centered(-0.3, 0.3);
  std::uniform_real_distribution<double> positive(0.05, 0.3);
  // Continuous position of each pressure level; strictly positive so even
  // light users still show a measurable (relative) response to stress.
  auto position = [&](int level) { return level + (level == 0 ? positive(rng) : centered(rng)); };
  auto tolerance = [&](int sensitivity) {
    const double jitter = centered(rng);
    return sensitivity == 0 ? node.levels + 1.0 : (node.levels - sensitivity) + jitter;
  };

  ResourceFootprint f;
  f.llc_knee_ways = llc_knee_ways;
  f.llc_kmps = node.kmps_for_level(position(profile[SharedResource::kLlc].pressure), llc_knee_ways);
  f.membw_gbps = position(profile[SharedResource::kMemoryBandwidth].pressure) * node.phy_mbw_gbps / node.levels;
  f.disk_iops = position(profile[SharedResource::kDisk].pressure) * node.iops_scaler;
  f.network_gbps = position(profile[SharedResource::kNetwork].pressure) * node.phy_nbw_gbps / node.levels;
  f.membw_tolerance = tolerance(profile[SharedResource::kMemoryBandwidth].sensitivity);
  f.disk_tolerance = tolerance(profile[SharedResource::kDisk].sensitivity);
  f.network_tolerance = tolerance(profile[SharedResource::kNetwork].sensitivity);
  return f;
}

Workload make_workload(const WorkloadArchetype& archetype, int workload_id, std::uint64_t noise_seed,
                       ResourceSpec origin_spec, const SynthOptions& options) {
  require(options.surface_noise >= 0.0, "surface noise must be non-negative");
  require(options.profile_jitter >= 0, "profile jitter must be non-negative");
  auto rng = seeded(noise_seed, static_cast<std::uint64_t>(archetype.archetype_id), 0x5eed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const NodeModel& node = options.node;

  SurfaceShape shape = archetype.shape;
  const double zc = gauss(rng);
  const double zm = gauss(rng);
  shape.core_exponent *= std::exp(options.surface_noise * zc);
  shape.memory_exponent *= std::exp(options.surface_noise * zm);

  const auto t = grid_throughput(shape, options.region);
  auto surface = ScalingSurface::from_throughput(options.region, options.surface_base, t);

  std::uniform_int_distribution<int> jitter(-options.profile_jitter, options.profile_jitter);
  InterferenceProfile profile;
  for (std::size_t r = 0; r < kNumSharedResources; ++r) {
    const auto& typical = archetype.typical_profile.levels[r];
    profile.levels[r].pressure = clamp_level(typical.pressure + jitter(rng), node.levels);
    profile.levels[r].sensitivity = clamp_level(typical.sensitivity + jitter(rng), node.levels);
  }
  const int knee = std::clamp(archetype.llc_knee_ways + std::uniform_int_distribution<int>(-1, 1)(rng), 0,
                              node.llc_ways - 1);
  profile[SharedResource::kLlc].sensitivity = llc_sensitivity_level(knee, node);
  const auto footprint = footprint_for_profile(profile, knee, node, rng());

  return Workload{workload_id, archetype.archetype_id, noise_seed, origin_spec, archetype, shape,
                  std::move(surface), profile, footprint};
}

SystemIndexVector observe_indexes(const Workload& workload, ResourceSpec spec, double noise_sigma,
                                  const ConfigRegion& region) {
  region.require_index(spec);
  require(noise_sigma >= 0.0 && std::isfinite(noise_sigma), "noise sigma must be non-negative");
  SystemIndexVector v = workload.archetype.signature_at(spec);
  auto rng = seeded(workload.noise_seed, static_cast<std::uint64_t>(spec.cores),
                    static_cast<std::uint64_t>(spec.memory_gb), 0x1d);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double& x : v.values) x = std::max(0.0, x * std::exp(noise_sigma * gauss(rng)));
  auto& misses = v[IndexId::kCacheMisses];
  misses = std::min(misses, v[IndexId::kCacheReferences]);
  return v;
}

WorkloadSet generate_workload_set(int archetype_count, int workload_count, std::uint64_t rng_seed,
                                  const SynthOptions& options) {
  require(workload_count >= 1, "workload count must be positive");
  WorkloadSet set{options, generate_archetypes(archetype_count, mix_seed(rng_seed, 1)), {}};
  std::mt19937_64 rng(mix_seed(rng_seed, 2));
  std::uniform_int_distribution<std::size_t> pick(0, options.region.size() - 1);
  set.workloads.reserve(static_cast<std::size_t>(workload_count));
  for (int i = 0; i < workload_count; ++i) {
    const auto& a = set.archetypes[static_cast<std::size_t>(i % archetype_count)];
    set.workloads.push_back(
        make_workload(a, i, mix_seed(rng_seed, 1000 + static_cast<std::uint64_t>(i)), options.region.at(pick(rng)), options));
  }
  return set;
}

}  // namespace rightsize
