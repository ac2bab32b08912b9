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

// Contention-aware placement and the least-requested baseline.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "rightsize/interference.hpp"
#include "rightsize/region.hpp"

namespace rightsize {

struct DeployedWorkload {
  int workload_id = 0;
  ResourceSpec spec;
  InterferenceProfile profile;

  friend bool operator==(const DeployedWorkload&, const DeployedWorkload&) = default;
};

struct NodeState {
  int node_id = 0;
  ResourceSpec capacity{96, 256};
  ResourceSpec used{0, 0};
  std::vector<DeployedWorkload> deployed;
  std::array<int, kNumSharedResources> sum_pressure{};
  std::array<int, kNumSharedResources> max_sensitivity{};

  NodeState() = default;
  NodeState(int id, ResourceSpec cap) : node_id(id), capacity(cap) {}

  bool fits(ResourceSpec spec) const;
  /// Throws CapacityExhausted if the workload does not fit.
  void deploy(const DeployedWorkload& w);
  /// Recomputes used, SumP and MaxS from `deployed`.
  void recompute();
  bool consistent() const;
};

enum class SchedulingPolicy { kContentionAware, kLeastRequested };

struct ScheduleConfig {
  double scaler = 1.1;
  SchedulingPolicy policy = SchedulingPolicy::kContentionAware;
  /// Usage_Ave after (true) or before (false) placing the incoming workload.
  bool usage_after_placement = true;
};

/// sum_r MaxS_r * SumP_r * scaler^SumP_r
double contention_risk(std::span<const int> sum_pressure, std::span<const int> max_sensitivity, double scaler);
double contention_risk(const NodeState& node, const ScheduleConfig& config);

/// Mean of used/capacity over cores and memory.
double usage_average(ResourceSpec used, ResourceSpec capacity);

/// Contention risk times average usage, with the incoming workload placed
/// hypothetically on the node.
double score_node(const NodeState& node, const DeployedWorkload& incoming, const ScheduleConfig& config);

/// Mean over cores and memory of requested / free before placement.
double least_requested_score(const NodeState& node, ResourceSpec request);

struct Placement {
  int workload_id = 0;
  int node_id = 0;
  double score = 0.0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

/// Picks the feasible node with the lowest score (ties: lowest node_id),
/// deploys the workload there and returns the decision. Throws
/// CapacityExhausted when no node fits, InvalidArgument for scaler <= 1.
Placement place(const DeployedWorkload& incoming, std::span<NodeState> nodes, const ScheduleConfig& config);

class Scheduler {
 public:
  Scheduler(std::vector<NodeState> nodes, ScheduleConfig config);

  Placement place(const DeployedWorkload& incoming);

  const std::vector<NodeState>& nodes() const { return nodes_; }
  const std::vector<Placement>& log() const { return log_; }
  const ScheduleConfig& config() const { return config_; }

 private:
  std::vector<NodeState> nodes_;
  ScheduleConfig config_;
  std::vector<Placement> log_;
};

std::vector<NodeState> make_nodes(int count, ResourceSpec capacity);

}  // namespace rightsize
