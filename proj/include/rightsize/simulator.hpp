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

// Co-located execution on a simulated cluster and the fairness metrics.

#pragma once

#include <span>
#include <vector>

#include "rightsize/interference.hpp"
#include "rightsize/kernels.hpp"
#include "rightsize/node_model.hpp"
#include "rightsize/region.hpp"

namespace rightsize {

struct ClusterSpec {
  int nodes = 7;
  ResourceSpec node_capacity{96, 256};
  NodeModel node;
  kernels::InterferenceModel interference;
};

/// A workload as placed: where it runs, what it holds, how it truly behaves.
struct PlacedWorkload {
  int workload_id = 0;
  int node_id = 0;
  ResourceSpec spec;
  InterferenceProfile profile;  // ground truth
};

struct WorkloadSlowdown {
  int workload_id = 0;
  int node_id = 0;
  double sd = 1.0;
};

struct Metrics {
  double p_sys = 0.0;
  double unfairness = 0.0;
};

struct SlowdownReport {
  std::vector<WorkloadSlowdown> workloads;
  Metrics metrics;
};

/// p_sys = sum sd; unfairness = (max - min) / max. Throws InvalidArgument on
/// an empty list or a non-positive slowdown.
Metrics compute_metrics(std::span<const double> slowdowns);

/// Slowdown of every workload given its co-runners' summed pressure on its
/// node. Throws InvalidArgument for an unknown node, duplicate workload id,
/// out-of-range level or a node over capacity.
SlowdownReport simulate_colocated(std::span<const PlacedWorkload> placed, const ClusterSpec& cluster,
                                  bool use_parallel_kernel = true);

}  // namespace rightsize
