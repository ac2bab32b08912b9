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

#include "rightsize/region.hpp"

#include <algorithm>
#include <cmath>

#include "rightsize/common.hpp"

namespace rightsize {

std::string to_string(ResourceSpec spec) {
  return "(" + std::to_string(spec.cores) + "C, " + std::to_string(spec.memory_gb) + "G)";
}

namespace {

void check_levels(const std::vector<int>& levels, const char* what) {
  require(!levels.empty(), std::string(what) + " levels must be non-empty");
  require(levels.front() > 0, std::string(what) + " levels must be positive");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    require(levels[i] > levels[i - 1], std::string(what) + " levels must be strictly increasing");
  }
}

}  // namespace

ConfigRegion::ConfigRegion(std::vector<int> core_levels, std::vector<int> memory_levels)
    : cores_(std::move(core_levels)), memory_(std::move(memory_levels)) {
  check_levels(cores_, "core");
  check_levels(memory_, "memory");
}

ConfigRegion ConfigRegion::default_region() {
  return ConfigRegion({1, 2, 4, 6, 8, 10, 12}, {2, 4, 6, 8, 12, 16});
}

ResourceSpec ConfigRegion::at(std::size_t index) const {
  require(index < size(), "grid index out of range");
  return {cores_[index / memory_.size()], memory_[index % memory_.size()]};
}

std::optional<std::size_t> ConfigRegion::index_of(ResourceSpec spec) const {
  auto c = std::lower_bound(cores_.begin(), cores_.end(), spec.cores);
  auto m = std::lower_bound(memory_.begin(), memory_.end(), spec.memory_gb);
  if (c == cores_.end() || *c != spec.cores || m == memory_.end() || *m != spec.memory_gb) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(c - cores_.begin()) * memory_.size() +
         static_cast<std::size_t>(m - memory_.begin());
}

std::size_t ConfigRegion::require_index(ResourceSpec spec) const {
  auto idx = index_of(spec);
  if (!idx) throw OutOfRegion("specification " + to_string(spec) + " is not in the configuration region");
  return *idx;
}

ScalingSurface::ScalingSurface(ConfigRegion region, ResourceSpec base, std::vector<double> speedups)
    : region_(std::move(region)), base_(base), speedups_(std::move(speedups)) {
  require(speedups_.size() == region_.size(), "surface size does not match region");
  for (double s : speedups_) {
    require(std::isfinite(s) && s > 0.0, "speedups must be finite and positive");
  }
  require(speedups_[region_.require_index(base_)] == 1.0, "speedup at the base specification must be 1.0");
}

ScalingSurface ScalingSurface::from_throughput(ConfigRegion region, ResourceSpec base,
                                               std::span<const double> throughput) {
  require(throughput.size() == region.size(), "throughput size does not match region");
  const double at_base = throughput[region.require_index(base)];
  require(std::isfinite(at_base) && at_base > 0.0, "throughput at base must be positive");
  std::vector<double> s(throughput.begin(), throughput.end());
  for (double& v : s) v /= at_base;
  return ScalingSurface(std::move(region), base, std::move(s));
}

double ScalingSurface::max_speedup() const {
  return *std::max_element(speedups_.begin(), speedups_.end());
}

ScalingSurface ScalingSurface::rebased(ResourceSpec new_base) const {
  return from_throughput(region_, new_base, speedups_);
}

bool ScalingSurface::is_monotone() const {
  const std::size_t nc = region_.core_levels().size();
  const std::size_t nm = region_.memory_levels().size();
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t m = 0; m < nm; ++m) {
      const double v = speedups_[c * nm + m];
      if (c + 1 < nc && speedups_[(c + 1) * nm + m] < v) return false;
      if (m + 1 < nm && speedups_[c * nm + m + 1] < v) return false;
    }
  }
  return true;
}

}  // namespace rightsize
