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

#include "rightsize/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "rightsize/common.hpp"

namespace rightsize {

bool NodeState::fits(ResourceSpec spec) const {
  return used.cores + spec.cores <= capacity.cores && used.memory_gb + spec.memory_gb <= capacity.memory_gb;
}

void NodeState::deploy(const DeployedWorkload& w) {
  if (!fits(w.spec)) {
    throw CapacityExhausted("workload " + std::to_string(w.workload_id) + " does not fit on node " +
                            std::to_string(node_id));
  }
  deployed.push_back(w);
  used.cores += w.spec.cores;
  used.memory_gb += w.spec.memory_gb;
  for (std::size_t r = 0; r < kNumSharedResources; ++r) {
    sum_pressure[r] += w.profile.levels[r].pressure;
    max_sensitivity[r] = std::max(max_sensitivity[r], w.profile.levels[r].sensitivity);
  }
}

void NodeState::recompute() {
  used = {0, 0};
  sum_pressure.fill(0);
  max_sensitivity.fill(0);
  for (const auto& w : deployed) {
    used.cores += w.spec.cores;
    used.memory_gb += w.spec.memory_gb;
    for (std::size_t r = 0; r < kNumSharedResources; ++r) {
      sum_pressure[r] += w.profile.levels[r].pressure;
      max_sensitivity[r] = std::max(max_sensitivity[r], w.profile.levels[r].sensitivity);
    }
  }
}

bool NodeState::consistent() const {
  NodeState copy = *this;
  copy.recompute();
  return copy.used == used && copy.sum_pressure == sum_pressure && copy.max_sensitivity == max_sensitivity &&
         used.cores <= capacity.cores && used.memory_gb <= capacity.memory_gb;
}

double contention_risk(std::span<const int> sum_pressure, std::span<const int> max_sensitivity, double scaler) {
  require(sum_pressure.size() == max_sensitivity.size(), "contention_risk: size mismatch");
  double risk = 0.0;
  for (std::size_t r = 0; r < sum_pressure.size(); ++r) {
    risk += max_sensitivity[r] * static_cast<double>(sum_pressure[r]) * std::pow(scaler, sum_pressure[r]);
  }
  return risk;
}

double contention_risk(const NodeState& node, const ScheduleConfig& config) {
  return contention_risk(node.sum_pressure, node.max_sensitivity, config.scaler);
}

double usage_average(ResourceSpec used, ResourceSpec capacity) {
  require(capacity.cores > 0 && capacity.memory_gb > 0, "usage_average: capacity must be positive");
  return (static_cast<double>(used.cores) / capacity.cores +
          static_cast<double>(used.memory_gb) / capacity.memory_gb) /
         2.0;
}

double score_node(const NodeState& node, const DeployedWorkload& incoming, const ScheduleConfig& config) {
  auto sum_p = node.sum_pressure;
  auto max_s = node.max_sensitivity;
  for (std::size_t r = 0; r < kNumSharedResources; ++r) {
    sum_p[r] += incoming.profile.levels[r].pressure;
    max_s[r] = std::max(max_s[r], incoming.profile.levels[r].sensitivity);
  }
  const ResourceSpec after{node.used.cores + incoming.spec.cores, node.used.memory_gb + incoming.spec.memory_gb};
  const double usage = usage_average(config.usage_after_placement ? after : node.used, node.capacity);
  return contention_risk(sum_p, max_s, config.scaler) * usage;
}

double least_requested_score(const NodeState& node, ResourceSpec request) {
  const double free_cores = node.capacity.cores - node.used.cores;
  const double free_mem = node.capacity.memory_gb - node.used.memory_gb;
  require(free_cores > 0 && free_mem > 0, "least_requested_score: node has no free capacity");
  return (request.cores / free_cores + request.memory_gb / free_mem) / 2.0;
}

Placement place(const DeployedWorkload& incoming, std::span<NodeState> nodes, const ScheduleConfig& config) {
  require(config.scaler > 1.0, "scaler must be greater than one");
  NodeState* best = nullptr;
  double best_score = 0.0;
  for (auto& node : nodes) {
    if (!node.fits(incoming.spec)) continue;
    const double s = config.policy == SchedulingPolicy::kContentionAware ? score_node(node, incoming, config)
                                                                         : least_requested_score(node, incoming.spec);
    if (!best || s < best_score || (s == best_score && node.node_id < best->node_id)) {
      best = &node;
      best_score = s;
    }
  }
  if (!best) {
    throw CapacityExhausted("no node can host workload " + std::to_string(incoming.workload_id) + " " +
                            to_string(incoming.spec));
  }
  best->deploy(incoming);
  return Placement{incoming.workload_id, best->node_id, best_score};
}

Scheduler::Scheduler(std::vector<NodeState> nodes, ScheduleConfig config)
    : nodes_(std::move(nodes)), config_(config) {
  require(config_.scaler > 1.0, "scaler must be greater than one");
  require(!nodes_.empty(), "scheduler needs at least one node");
  std::set<int> ids;
  for (const auto& n : nodes_) {
    require(ids.insert(n.node_id).second, "duplicate node id");
    require(n.capacity.cores > 0 && n.capacity.memory_gb > 0, "node capacity must be positive");
    require(n.consistent(), "node state is inconsistent");
  }
}

Placement Scheduler::place(const DeployedWorkload& incoming) {
  auto p = rightsize::place(incoming, nodes_, config_);
  log_.push_back(p);
  return p;
}

std::vector<NodeState> make_nodes(int count, ResourceSpec capacity) {
  require(count >= 1, "need at least one node");
  std::vector<NodeState> nodes;
  for (int i = 0; i < count; ++i) nodes.emplace_back(i, capacity);
  return nodes;
}

}  // namespace rightsize
