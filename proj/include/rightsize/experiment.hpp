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

// End-to-end evaluations on synthetic workloads: planning scenarios, the
// co-location comparison, hyper-parameter sweeps and leave-one-out.
//
// Every run is a pure function of the config (including its seed). Parallel
// loops write into per-index slots and all reductions happen serially.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rightsize/estimator.hpp"
#include "rightsize/io.hpp"
#include "rightsize/planner.hpp"
#include "rightsize/scheduler.hpp"
#include "rightsize/simulator.hpp"
#include "rightsize/workload_synth.hpp"

namespace rightsize {

struct ExperimentConfig {
  std::uint64_t seed = 0;
  int archetypes = 20;
  int workloads = 55;
  int train = 44;
  int validation = 11;
  int k = 20;
  ResourceSpec base_spec{6, 8};
  double noise_sigma = 0.05;
  std::optional<double> lambda;  // unset: cross-validated
  ClassifierOptions classifier;
  SynthOptions synth;
  CostWeights cost_weights;
  double epsilon = 0.05;

  ResourceSpec scenario1_origin{1, 2};
  std::vector<double> scenario1_targets{2.0, 3.0};
  ResourceSpec scenario2_origin{12, 16};

  int trials = 10;
  int colocation_workloads = 56;
  ClusterSpec cluster;
  double scaler = 1.1;
  bool usage_after_placement = true;

  int sweep_k_min = 2;
  int sweep_k_max = 30;
  int sweep_repeats = 5;  // datasets averaged; repeat 0 uses `seed`
  std::vector<ResourceSpec> sweep_bases;  // empty: every grid point

  /// Throws InvalidArgument when fields are inconsistent.
  void validate() const;
};

ExperimentConfig config_from_json(const Json& j);
Json to_json(const ExperimentConfig& c);

/// Workload set plus the train/validation split.
struct Dataset {
  WorkloadSet set;
  std::vector<const Workload*> train;
  std::vector<const Workload*> validation;

  Dataset() = default;
  Dataset(const Dataset&) = delete;
  Dataset& operator=(const Dataset&) = delete;
  Dataset(Dataset&&) = default;
  Dataset& operator=(Dataset&&) = default;
};

WorkloadSet generate_dataset_workloads(const ExperimentConfig& config);
/// Random split in which every validation workload's archetype also appears
/// in the training part.
Dataset split_dataset(WorkloadSet set, const ExperimentConfig& config);
Dataset make_dataset(const ExperimentConfig& config);

PlannerTrainingOptions training_options(const ExperimentConfig& config);
PlannerModel train_model(const Dataset& data, const ExperimentConfig& config, std::span<const ResourceSpec> bases);

/// Profile of a workload measured on a noiseless simulated probe.
InterferenceProfile estimate_profile(const Workload& w, const EstimatorConfig& estimator, const NodeModel& node);

struct PlanningOutcome {
  int workload_id = 0;
  double target = 1.0;  // scale-up target; 0 for scale-down
  std::optional<ResourceSpec> recommended;
  std::optional<ResourceSpec> oracle;
  bool optimal = false;
  bool satisfied = false;  // on the ground-truth surface
  int core_gap = 0;        // recommended - oracle
  int memory_gap = 0;
};

struct ErrorStats {
  std::vector<double> errors;
  double mean = 0.0;
  double max = 0.0;
};

ErrorStats error_stats(std::vector<double> errors);

struct Scenario1Report {
  ResourceSpec origin;
  ErrorStats planner_error;
  std::vector<PlanningOutcome> requests;
  int feasible = 0;     // oracle found a spec
  int recommended = 0;  // planner found a spec
  int optimal = 0;
  int satisfied = 0;
  int max_core_gap = 0;
  int max_memory_gap = 0;
  double optimal_fraction = 0.0;  // optimal / feasible
};

struct Scenario2Report {
  ResourceSpec origin;
  double epsilon = 0.0;
  std::vector<PlanningOutcome> requests;
  int satisfied = 0;
  ResourceSpec origin_total{0, 0};
  ResourceSpec recommended_total{0, 0};
  ResourceSpec oracle_total{0, 0};
  double core_reduction = 0.0;    // 1 - recommended / origin
  double memory_reduction = 0.0;
  double core_excess = 0.0;       // recommended / oracle - 1
  double memory_excess = 0.0;
};

struct ColocationTrial {
  int trial = 0;
  std::uint64_t seed = 0;
  bool aborted = false;
  std::string abort_reason;
  ResourceSpec origin_total{0, 0};
  ResourceSpec recommended_total{0, 0};
  int plans_satisfied = 0;  // recommendations preserving ground-truth performance
  int profile_levels_within_one = 0;
  double p_sys_ursa = 0.0;
  double p_sys_lrp = 0.0;
  double unfairness_ursa = 0.0;
  double unfairness_lrp = 0.0;
  double p_sys_ratio = 0.0;       // ursa / lrp
  double unfairness_ratio = 0.0;  // ursa / lrp
  double core_reduction = 0.0;
  double memory_reduction = 0.0;
  std::vector<Placement> ursa_placements;
  std::vector<Placement> lrp_placements;
};

struct ColocationReport {
  int workloads_per_trial = 0;
  std::vector<ColocationTrial> trials;
  int unfairness_wins = 0;
  double mean_unfairness_reduction = 0.0;  // mean of 1 - unfairness_ratio
  double min_p_sys_ratio = 0.0;
  double mean_core_reduction = 0.0;
  double mean_memory_reduction = 0.0;
};

struct SweepReport {
  std::vector<int> ks;
  std::vector<ResourceSpec> bases;
  std::vector<std::uint64_t> seeds;  // one dataset per repeat
  /// error[b][i]: mean validation error of base b at ks[i], averaged over repeats.
  std::vector<std::vector<double>> error;
  /// mean_by_repeat[r][i]: mean over bases for repeat r at ks[i].
  std::vector<std::vector<double>> mean_by_repeat;
  std::vector<double> mean_by_k;      // over bases
  std::vector<double> stderr_by_k;    // over repeats, or over bases for a single repeat
  std::vector<double> mean_by_base;   // at the configured k (or nearest swept)
};

struct LoocvReport {
  ResourceSpec base;
  ErrorStats error;
  std::vector<int> workload_ids;
};

Scenario1Report run_scenario1(const ExperimentConfig& config, const Dataset& data, const BasePlanner& planner);
Scenario1Report run_scenario1(const ExperimentConfig& config);
Scenario2Report run_scenario2(const ExperimentConfig& config, const Dataset& data, const BasePlanner& planner);
Scenario2Report run_scenario2(const ExperimentConfig& config);
ColocationReport run_colocation(const ExperimentConfig& config, const Dataset& data, const BasePlanner& planner);
ColocationReport run_colocation(const ExperimentConfig& config);
SweepReport run_hyperparam_sweep(const ExperimentConfig& config, const Dataset& data);
SweepReport run_hyperparam_sweep(const ExperimentConfig& config);
LoocvReport run_loocv(const ExperimentConfig& config, const Dataset& data);
LoocvReport run_loocv(const ExperimentConfig& config);

Json to_json(const Scenario1Report& r);
Json to_json(const Scenario2Report& r);
Json to_json(const ColocationReport& r);
Json to_json(const SweepReport& r);
Json to_json(const LoocvReport& r);

std::string scenario_to_csv(std::span<const PlanningOutcome> requests);
std::string colocation_to_csv(const ColocationReport& r);
std::string sweep_to_csv(const SweepReport& r);

}  // namespace rightsize
