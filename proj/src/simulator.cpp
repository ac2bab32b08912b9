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

#include "rightsize/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rightsize/common.hpp"

namespace rightsize {

Metrics compute_metrics(std::span<const double> slowdowns) {
  require(!slowdowns.empty(), "compute_metrics: no slowdowns");
  Metrics m;
  double lo = slowdowns.front();
  double hi = slowdowns.front();
  for (double sd : slowdowns) {
    require(std::isfinite(sd) && sd > 0.0, "compute_metrics: slowdowns must be positive");
    m.p_sys += sd;
    lo = std::min(lo, sd);
    hi = std::max(hi, sd);
  }
  m.unfairness = (hi - lo) / hi;
  return m;
}

SlowdownReport simulate_colocated(std::span<const PlacedWorkload> placed, const ClusterSpec& cluster,
                                  bool use_parallel_kernel) {
  require(cluster.nodes >= 1, "cluster needs at least one node");
  require(cluster.node_capacity.cores > 0 && cluster.node_capacity.memory_gb > 0, "node capacity must be positive");
  require(cluster.interference.levels >= 1, "level count must be positive");
  const auto nodes = static_cast<std::size_t>(cluster.nodes);
  std::vector<double> node_pressure(nodes * kNumSharedResources, 0.0);
  std::vector<ResourceSpec> used(nodes, ResourceSpec{0, 0});
  std::vector<kernels::ColocatedWorkload> work;
  work.reserve(placed.size());
  std::set<int> ids;
  for (const auto& p : placed) {
    require(p.node_id >= 0 && p.node_id < cluster.nodes, "placement on unknown node");
    require(ids.insert(p.workload_id).second, "workload placed twice");
    require(p.profile.within(cluster.interference.levels), "profile level out of range");
    require(p.spec.cores > 0 && p.spec.memory_gb > 0, "workload spec must be positive");
    const auto n = static_cast<std::size_t>(p.node_id);
    used[n].cores += p.spec.cores;
    used[n].memory_gb += p.spec.memory_gb;
    require(used[n].cores <= cluster.node_capacity.cores && used[n].memory_gb <= cluster.node_capacity.memory_gb,
            "placement exceeds node capacity");
    kernels::ColocatedWorkload w;
    w.node = n;
    for (std::size_t r = 0; r < kNumSharedResources; ++r) {
      w.pressure[r] = p.profile.levels[r].pressure;
      w.sensitivity[r] = p.profile.levels[r].sensitivity;
      node_pressure[n * kNumSharedResources + r] += w.pressure[r];
    }
    work.push_back(w);
  }

  std::vector<double> sd(work.size());
  if (use_parallel_kernel) {
    kernels::parallel::slowdowns(work, node_pressure, cluster.interference, sd);
  } else {
    kernels::serial::slowdowns(work, node_pressure, cluster.interference, sd);
  }

  SlowdownReport report;
  for (std::size_t i = 0; i < placed.size(); ++i) {
    report.workloads.push_back({placed[i].workload_id, placed[i].node_id, sd[i]});
  }
  if (!sd.empty()) report.metrics = compute_metrics(sd);
  return report;
}

}  // namespace rightsize
