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

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rightsize {

/// A (cores, memory) instance specification.
struct ResourceSpec {
  int cores = 0;
  int memory_gb = 0;

  friend auto operator<=>(const ResourceSpec&, const ResourceSpec&) = default;
};

std::string to_string(ResourceSpec spec);

/// Linear rental cost of a specification.
struct CostWeights {
  double per_core = 1.0;
  double per_gb = 0.25;

  double cost(ResourceSpec s) const { return per_core * s.cores + per_gb * s.memory_gb; }
};

/// Rectangular grid of specifications that capacity planning searches over.
///
/// Grid points are enumerated cores-major: index = core_idx * |memory_levels|
/// + memory_idx. Every ScalingSurface stores its speedups in this order.
class ConfigRegion {
 public:
  ConfigRegion(std::vector<int> core_levels, std::vector<int> memory_levels);

  /// 1,2,4,...,12 cores x 2,4,6,8,12,16 GB.
  static ConfigRegion default_region();

  std::size_t size() const { return cores_.size() * memory_.size(); }
  ResourceSpec at(std::size_t index) const;
  std::optional<std::size_t> index_of(ResourceSpec spec) const;
  /// Throws OutOfRegion when the spec is not a grid point.
  std::size_t require_index(ResourceSpec spec) const;
  bool contains(ResourceSpec spec) const { return index_of(spec).has_value(); }

  const std::vector<int>& core_levels() const { return cores_; }
  const std::vector<int>& memory_levels() const { return memory_; }
  ResourceSpec smallest() const { return {cores_.front(), memory_.front()}; }
  ResourceSpec largest() const { return {cores_.back(), memory_.back()}; }

  friend bool operator==(const ConfigRegion&, const ConfigRegion&) = default;

 private:
  std::vector<int> cores_;
  std::vector<int> memory_;
};

/// Speedup relative to a base specification at every grid point of a region.
///
/// Invariants enforced at construction: one finite positive value per grid
/// point and exactly 1.0 at the base point.
class ScalingSurface {
 public:
  ScalingSurface(ConfigRegion region, ResourceSpec base, std::vector<double> speedups);

  /// Normalizes raw throughputs (any positive scale) to the given base.
  static ScalingSurface from_throughput(ConfigRegion region, ResourceSpec base,
                                        std::span<const double> throughput);

  const ConfigRegion& region() const { return region_; }
  ResourceSpec base_spec() const { return base_; }
  std::span<const double> values() const { return speedups_; }
  double speedup(ResourceSpec spec) const { return speedups_[region_.require_index(spec)]; }
  double max_speedup() const;

  /// Same surface anchored at a different grid point.
  ScalingSurface rebased(ResourceSpec new_base) const;

  /// Non-decreasing along both axes.
  bool is_monotone() const;

  friend bool operator==(const ScalingSurface&, const ScalingSurface&) = default;

 private:
  ConfigRegion region_;
  ResourceSpec base_;
  std::vector<double> speedups_;
};

}  // namespace rightsize
