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

#include "rightsize/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "rightsize/common.hpp"

namespace rightsize {

namespace {

constexpr std::uint64_t kSplitStream = 3;
constexpr std::uint64_t kPlannerStream = 4;
constexpr std::uint64_t kTrialStream = 100;

double ratio(double num, double den) {
  if (den != 0.0) return num / den;
  return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
}

Json spec_or_null(const std::optional<ResourceSpec>& s) { return s ? to_json(*s) : Json(nullptr); }

std::optional<ResourceSpec> try_plan(const PlanningRequest& request, const ScalingSurface& surface) {
  try {
    return plan_capacity(request, surface);
  } catch (const Infeasible&) {
    return std::nullopt;
  }
}

PlanningOutcome evaluate_request(const PlanningRequest& request, const Workload& w, const ScalingSurface& predicted) {
  PlanningOutcome o;
  o.workload_id = w.workload_id;
  o.target = request.policy == PlanningPolicy::kScaleUp ? request.target_speedup : 0.0;
  o.recommended = try_plan(request, predicted);
  o.oracle = try_plan(request, w.ground_truth_surface);
  o.satisfied = o.recommended && satisfies(request, w.ground_truth_surface, *o.recommended);
  if (o.recommended && o.oracle) {
    o.optimal = *o.recommended == *o.oracle;
    o.core_gap = o.recommended->cores - o.oracle->cores;
    o.memory_gap = o.recommended->memory_gb - o.oracle->memory_gb;
  }
  return o;
}

int levels_within_one(const InterferenceProfile& a, const InterferenceProfile& b) {
  int n = 0;
  for (std::size_t r = 0; r < kNumSharedResources; ++r) {
    n += std::abs(a.levels[r].pressure - b.levels[r].pressure) <= 1;
    n += std::abs(a.levels[r].sensitivity - b.levels[r].sensitivity) <= 1;
  }
  return n;
}

Json outcome_to_json(const PlanningOutcome& o) {
  return {{"workload_id", o.workload_id},
          {"target", o.target},
          {"recommended", spec_or_null(o.recommended)},
          {"oracle", spec_or_null(o.oracle)},
          {"optimal", o.optimal},
          {"satisfied", o.satisfied},
          {"core_gap", o.core_gap},
          {"memory_gap", o.memory_gap}};
}

Json stats_to_json(const ErrorStats& s) { return {{"errors", s.errors}, {"mean", s.mean}, {"max", s.max}}; }

ResourceSpec add(ResourceSpec a, ResourceSpec b) { return {a.cores + b.cores, a.memory_gb + b.memory_gb}; }

}  // namespace

void ExperimentConfig::validate() const {
  require(archetypes >= 2, "config: need at least two archetypes");
  require(workloads >= 2 && train >= 1 && validation >= 1, "config: workload counts must be positive");
  require(train + validation == workloads, "config: train + validation must equal workloads");
  require(k >= 1 && k <= train, "config: k must be in [1, train]");
  require(noise_sigma >= 0.0, "config: noise_sigma must be non-negative");
  require(epsilon >= 0.0 && epsilon < 1.0, "config: epsilon must be in [0, 1)");
  require(trials >= 1 && colocation_workloads >= 1, "config: trial sizes must be positive");
  require(scaler > 1.0, "config: scaler must exceed one");
  require(cluster.nodes >= 1, "config: cluster needs nodes");
  require(sweep_k_min >= 1 && sweep_k_min <= sweep_k_max, "config: bad sweep k range");
  require(sweep_repeats >= 1, "config: sweep_repeats must be positive");
  for (double t : scenario1_targets) require(t >= 1.0, "config: scale-up targets must be >= 1");
  synth.region.require_index(base_spec);
  synth.region.require_index(synth.surface_base);
  synth.region.require_index(scenario1_origin);
  synth.region.require_index(scenario2_origin);
  for (auto b : sweep_bases) synth.region.require_index(b);
}

ExperimentConfig config_from_json(const Json& j) {
  require(j.is_object(), "config must be a JSON object");
  ExperimentConfig c;
  c.seed = j.value("seed", c.seed);
  c.archetypes = j.value("archetypes", c.archetypes);
  c.workloads = j.value("workloads", c.workloads);
  c.train = j.value("train", c.train);
  c.validation = j.value("validation", c.validation);
  c.k = j.value("k", c.k);
  if (j.contains("base_spec")) c.base_spec = spec_from_json(j["base_spec"]);
  c.noise_sigma = j.value("noise_sigma", c.noise_sigma);
  if (j.contains("lambda") && !j["lambda"].is_null()) c.lambda = j["lambda"].get<double>();
  if (j.contains("classifier")) {
    const auto& cl = j["classifier"];
    const auto kind = cl.value("kind", std::string("mlp"));
    require(kind == "mlp" || kind == "nearest_centroid", "config: unknown classifier kind '" + kind + "'");
    c.classifier.kind = kind == "mlp" ? ClassifierKind::kMlp : ClassifierKind::kNearestCentroid;
    c.classifier.mlp.hidden_units = cl.value("hidden_units", c.classifier.mlp.hidden_units);
    c.classifier.mlp.learning_rate = cl.value("learning_rate", c.classifier.mlp.learning_rate);
    c.classifier.mlp.epochs = cl.value("epochs", c.classifier.mlp.epochs);
  }
  if (j.contains("synth")) c.synth = synth_options_from_json(j["synth"]);
  if (j.contains("cost_weights")) {
    c.cost_weights.per_core = j["cost_weights"].value("per_core", c.cost_weights.per_core);
    c.cost_weights.per_gb = j["cost_weights"].value("per_gb", c.cost_weights.per_gb);
  }
  c.epsilon = j.value("epsilon", c.epsilon);
  if (j.contains("scenario1_origin")) c.scenario1_origin = spec_from_json(j["scenario1_origin"]);
  c.scenario1_targets = j.value("scenario1_targets", c.scenario1_targets);
  if (j.contains("scenario2_origin")) c.scenario2_origin = spec_from_json(j["scenario2_origin"]);
  c.trials = j.value("trials", c.trials);
  c.colocation_workloads = j.value("colocation_workloads", c.colocation_workloads);
  c.cluster.node = c.synth.node;
  c.cluster.interference.levels = c.synth.node.levels;
  c.cluster.interference.theta = c.synth.node.levels / 4.0;
  if (j.contains("cluster")) {
    const auto& cl = j["cluster"];
    c.cluster.nodes = cl.value("nodes", c.cluster.nodes);
    if (cl.contains("node_capacity")) c.cluster.node_capacity = spec_from_json(cl["node_capacity"]);
    c.cluster.interference.gamma = cl.value("gamma", c.cluster.interference.gamma);
    c.cluster.interference.theta = cl.value("theta", c.cluster.interference.theta);
  }
  c.scaler = j.value("scaler", c.scaler);
  c.usage_after_placement = j.value("usage_after_placement", c.usage_after_placement);
  c.sweep_k_min = j.value("sweep_k_min", c.sweep_k_min);
  c.sweep_k_max = j.value("sweep_k_max", c.sweep_k_max);
  c.sweep_repeats = j.value("sweep_repeats", c.sweep_repeats);
  if (j.contains("sweep_bases")) {
    for (const auto& b : j["sweep_bases"]) c.sweep_bases.push_back(spec_from_json(b));
  }
  c.validate();
  return c;
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["archetypes"] = c.archetypes;
  j["workloads"] = c.workloads;
  j["train"] = c.train;
  j["validation"] = c.validation;
  j["k"] = c.k;
  j["base_spec"] = to_json(c.base_spec);
  j["noise_sigma"] = c.noise_sigma;
  j["lambda"] = c.lambda ? Json(*c.lambda) : Json(nullptr);
  j["classifier"] = {{"kind", c.classifier.kind == ClassifierKind::kMlp ? "mlp" : "nearest_centroid"},
                     {"hidden_units", c.classifier.mlp.hidden_units},
                     {"learning_rate", c.classifier.mlp.learning_rate},
                     {"epochs", c.classifier.mlp.epochs}};
  j["synth"] = to_json(c.synth);
  j["cost_weights"] = {{"per_core", c.cost_weights.per_core}, {"per_gb", c.cost_weights.per_gb}};
  j["epsilon"] = c.epsilon;
  j["scenario1_origin"] = to_json(c.scenario1_origin);
  j["scenario1_targets"] = c.scenario1_targets;
  j["scenario2_origin"] = to_json(c.scenario2_origin);
  j["trials"] = c.trials;
  j["colocation_workloads"] = c.colocation_workloads;
  j["cluster"] = {{"nodes", c.cluster.nodes},
                  {"node_capacity", to_json(c.cluster.node_capacity)},
                  {"gamma", c.cluster.interference.gamma},
                  {"theta", c.cluster.interference.theta}};
  j["scaler"] = c.scaler;
  j["usage_after_placement"] = c.usage_after_placement;
  j["sweep_k_min"] = c.sweep_k_min;
  j["sweep_k_max"] = c.sweep_k_max;
  j["sweep_repeats"] = c.sweep_repeats;
  Json bases = Json::array();
  for (auto b : c.sweep_bases) bases.push_back(to_json(b));
  j["sweep_bases"] = bases;
  return j;
}

WorkloadSet generate_dataset_workloads(const ExperimentConfig& config) {
  config.validate();
  return generate_workload_set(config.archetypes, config.workloads, config.seed, config.synth);
}

Dataset split_dataset(WorkloadSet set, const ExperimentConfig& config) {
  require(static_cast<int>(set.workloads.size()) == config.train + config.validation,
          "split: workload count differs from train + validation");
  const std::size_t n = set.workloads.size();
  std::map<int, int> remaining;
  for (const auto& w : set.workloads) ++remaining[w.archetype_id];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(mix_seed(config.seed, kSplitStream));
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<bool> in_validation(n, false);
  std::map<int, int> taken;
  int chosen = 0;
  // First pass spreads validation over archetypes; the second allows repeats.
  for (int pass = 0; pass < 2 && chosen < config.validation; ++pass) {
    for (std::size_t i : order) {
      if (chosen == config.validation) break;
      const int a = set.workloads[i].archetype_id;
      if (in_validation[i] || remaining[a] < 2 || (pass == 0 && taken[a] > 0)) continue;
      in_validation[i] = true;
      --remaining[a];
      ++taken[a];
      ++chosen;
    }
  }
  require(chosen == config.validation, "split: too few workloads per archetype for the validation size");

  Dataset d;
  d.set = std::move(set);
  for (std::size_t i = 0; i < n; ++i) (in_validation[i] ? d.validation : d.train).push_back(&d.set.workloads[i]);
  return d;
}

Dataset make_dataset(const ExperimentConfig& config) { return split_dataset(generate_dataset_workloads(config), config); }

PlannerTrainingOptions training_options(const ExperimentConfig& config) {
  PlannerTrainingOptions o;
  o.k = config.k;
  o.noise_sigma = config.noise_sigma;
  o.lambda = config.lambda;
  o.classifier = config.classifier;
  o.seed = mix_seed(config.seed, kPlannerStream);
  return o;
}

PlannerModel train_model(const Dataset& data, const ExperimentConfig& config, std::span<const ResourceSpec> bases) {
  PlannerModel model{data.set.options.region, {}};
  const auto opts = training_options(config);
  std::vector<std::optional<BasePlanner>> slots(bases.size());
  const auto n = static_cast<std::ptrdiff_t>(bases.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    slots[u] = train_base_planner(data.train, bases[u], model.region, opts);
  }
  for (std::size_t i = 0; i < bases.size(); ++i) model.by_base.emplace(bases[i], std::move(*slots[i]));
  return model;
}

InterferenceProfile estimate_profile(const Workload& w, const EstimatorConfig& estimator, const NodeModel& node) {
  SimulatedProbe probe(w.footprint, node);
  return build_profile(probe, estimator);
}

ErrorStats error_stats(std::vector<double> errors) {
  ErrorStats s;
  s.errors = std::move(errors);
  for (double e : s.errors) {
    s.mean += e;
    s.max = std::max(s.max, e);
  }
  if (!s.errors.empty()) s.mean /= static_cast<double>(s.errors.size());
  return s;
}

Scenario1Report run_scenario1(const ExperimentConfig& config, const Dataset& data, const BasePlanner& planner) {
  const auto& region = data.set.options.region;
  region.require_index(config.scenario1_origin);
  Scenario1Report r;
  r.origin = config.scenario1_origin;
  r.planner_error = error_stats(validation_errors(planner, data.validation, region, config.noise_sigma));
  const auto base = planner.classifier.base_spec();
  for (const Workload* w : data.validation) {
    const auto predicted = planner.predict(observe_indexes(*w, base, config.noise_sigma, region));
    for (double t : config.scenario1_targets) {
      PlanningRequest req;
      req.policy = PlanningPolicy::kScaleUp;
      req.current_spec = config.scenario1_origin;
      req.target_speedup = t;
      req.cost_weights = config.cost_weights;
      r.requests.push_back(evaluate_request(req, *w, predicted));
    }
  }
  for (const auto& o : r.requests) {
    r.feasible += o.oracle.has_value();
    r.recommended += o.recommended.has_value();
    r.optimal += o.optimal;
    r.satisfied += o.satisfied;
    if (o.recommended && o.oracle && !o.optimal) {
      r.max_core_gap = std::max(r.max_core_gap, o.core_gap);
      r.max_memory_gap = std::max(r.max_memory_gap, o.memory_gap);
    }
  }
  r.optimal_fraction = r.feasible > 0 ? static_cast<double>(r.optimal) / r.feasible : 1.0;
  return r;
}

Scenario2Report run_scenario2(const ExperimentConfig& config, const Dataset& data, const BasePlanner& planner) {
  const auto& region = data.set.options.region;
  region.require_index(config.scenario2_origin);
  Scenario2Report r;
  r.origin = config.scenario2_origin;
  r.epsilon = config.epsilon;
  const auto base = planner.classifier.base_spec();
  for (const Workload* w : data.validation) {
    const auto predicted = planner.predict(observe_indexes(*w, base, config.noise_sigma, region));
    PlanningRequest req;
    req.policy = PlanningPolicy::kScaleDown;
    req.current_spec = config.scenario2_origin;
    req.performance_tolerance = config.epsilon;
    req.cost_weights = config.cost_weights;
    r.requests.push_back(evaluate_request(req, *w, predicted));
  }
  for (const auto& o : r.requests) {
    r.satisfied += o.satisfied;
    r.origin_total = add(r.origin_total, config.scenario2_origin);
    r.recommended_total = add(r.recommended_total, o.recommended.value_or(config.scenario2_origin));
    r.oracle_total = add(r.oracle_total, o.oracle.value_or(config.scenario2_origin));
  }
  r.core_reduction = 1.0 - ratio(r.recommended_total.cores, r.origin_total.cores);
  r.memory_reduction = 1.0 - ratio(r.recommended_total.memory_gb, r.origin_total.memory_gb);
  r.core_excess = ratio(r.recommended_total.cores, r.oracle_total.cores) - 1.0;
  r.memory_excess = ratio(r.recommended_total.memory_gb, r.oracle_total.memory_gb) - 1.0;
  return r;
}

namespace {

ColocationTrial run_trial(const ExperimentConfig& config, const Dataset& data, const BasePlanner& planner,
                          const EstimatorConfig& estimator, int t) {
  ColocationTrial trial;
  trial.trial = t;
  trial.seed = mix_seed(config.seed, kTrialStream + static_cast<std::uint64_t>(t));
  const auto& region = data.set.options.region;
  const auto base = planner.classifier.base_spec();
  std::mt19937_64 rng(trial.seed);
  std::uniform_int_distribution<std::size_t> pick_archetype(0, data.set.archetypes.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_spec(0, region.size() - 1);

  std::vector<Workload> workloads;
  for (int i = 0; i < config.colocation_workloads; ++i) {
    const auto& a = data.set.archetypes[pick_archetype(rng)];
    const std::uint64_t noise_seed = rng();
    const auto origin = region.at(pick_spec(rng));
    workloads.push_back(make_workload(a, i, noise_seed, origin, data.set.options));
  }

  std::vector<DeployedWorkload> ursa_in, lrp_in;
  for (const auto& w : workloads) {
    const auto predicted = planner.predict(observe_indexes(w, base, config.noise_sigma, region));
    PlanningRequest req;
    req.policy = PlanningPolicy::kScaleDown;
    req.current_spec = w.origin_spec;
    req.performance_tolerance = config.epsilon;
    req.cost_weights = config.cost_weights;
    const auto rec = try_plan(req, predicted).value_or(w.origin_spec);
    trial.plans_satisfied += satisfies(req, w.ground_truth_surface, rec);
    const auto profile = estimate_profile(w, estimator, data.set.options.node);
    trial.profile_levels_within_one += levels_within_one(profile, w.ground_truth_profile);
    trial.origin_total = add(trial.origin_total, w.origin_spec);
    trial.recommended_total = add(trial.recommended_total, rec);
    ursa_in.push_back({w.workload_id, rec, profile});
    lrp_in.push_back({w.workload_id, w.origin_spec, profile});
  }

  auto schedule = [&](const std::vector<DeployedWorkload>& in, SchedulingPolicy policy,
                      std::vector<Placement>& log) -> std::optional<SlowdownReport> {
    Scheduler s(make_nodes(config.cluster.nodes, config.cluster.node_capacity),
                ScheduleConfig{config.scaler, policy, config.usage_after_placement});
    try {
      for (const auto& d : in) s.place(d);
    } catch (const CapacityExhausted& e) {
      trial.aborted = true;
      trial.abort_reason = e.what();
      return std::nullopt;
    }
    log = s.log();
    std::vector<PlacedWorkload> placed;
    for (std::size_t i = 0; i < in.size(); ++i) {
      placed.push_back({in[i].workload_id, log[i].node_id, in[i].spec, workloads[i].ground_truth_profile});
    }
    return simulate_colocated(placed, config.cluster);
  };

  const auto ursa = schedule(ursa_in, SchedulingPolicy::kContentionAware, trial.ursa_placements);
  const auto lrp = schedule(lrp_in, SchedulingPolicy::kLeastRequested, trial.lrp_placements);
  trial.core_reduction = 1.0 - ratio(trial.recommended_total.cores, trial.origin_total.cores);
  trial.memory_reduction = 1.0 - ratio(trial.recommended_total.memory_gb, trial.origin_total.memory_gb);
  if (!ursa || !lrp) return trial;
  trial.p_sys_ursa = ursa->metrics.p_sys;
  trial.p_sys_lrp = lrp->metrics.p_sys;
  trial.unfairness_ursa = ursa->metrics.unfairness;
  trial.unfairness_lrp = lrp->metrics.unfairness;
  trial.p_sys_ratio = ratio(trial.p_sys_ursa, trial.p_sys_lrp);
  trial.unfairness_ratio = ratio(trial.unfairness_ursa, trial.unfairness_lrp);
  return trial;
}

}  // namespace

ColocationReport run_colocation(const ExperimentConfig& config, const Dataset& data, const BasePlanner& planner) {
  ColocationReport r;
  r.workloads_per_trial = config.colocation_workloads;
  const auto estimator = EstimatorConfig::defaults(data.set.options.node);
  std::vector<std::optional<ColocationTrial>> slots(static_cast<std::size_t>(config.trials));
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < config.trials; ++t) {
    slots[static_cast<std::size_t>(t)] = run_trial(config, data, planner, estimator, t);
  }
  int completed = 0;
  r.min_p_sys_ratio = std::numeric_limits<double>::infinity();
  for (auto& s : slots) {
    r.trials.push_back(std::move(*s));
    const auto& t = r.trials.back();
    if (t.aborted) continue;
    ++completed;
    r.unfairness_wins += t.unfairness_ursa < t.unfairness_lrp;
    r.mean_unfairness_reduction += 1.0 - t.unfairness_ratio;
    r.min_p_sys_ratio = std::min(r.min_p_sys_ratio, t.p_sys_ratio);
    r.mean_core_reduction += t.core_reduction;
    r.mean_memory_reduction += t.memory_reduction;
  }
  if (completed > 0) {
    r.mean_unfairness_reduction /= completed;
    r.mean_core_reduction /= completed;
    r.mean_memory_reduction /= completed;
  } else {
    r.min_p_sys_ratio = 0.0;
  }
  return r;
}

namespace {

SweepReport sweep_grid(const ExperimentConfig& config, int k_max) {
  SweepReport r;
  require(config.sweep_k_min <= k_max, "sweep: k range is empty for this training set");
  for (int k = config.sweep_k_min; k <= k_max; ++k) r.ks.push_back(k);
  const auto& region = config.synth.region;
  if (config.sweep_bases.empty()) {
    for (std::size_t i = 0; i < region.size(); ++i) r.bases.push_back(region.at(i));
  } else {
    r.bases = config.sweep_bases;
  }
  r.error.assign(r.bases.size(), std::vector<double>(r.ks.size(), 0.0));
  return r;
}

// error[b][i] for one dataset.
std::vector<std::vector<double>> sweep_errors(const ExperimentConfig& config, const Dataset& data,
                                              const SweepReport& grid) {
  const auto& region = data.set.options.region;
  const auto opts = training_options(config);
  std::vector<std::vector<double>> error(grid.bases.size(), std::vector<double>(grid.ks.size(), 0.0));
  const auto nb = static_cast<std::ptrdiff_t>(grid.bases.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const auto ub = static_cast<std::size_t>(b);
    const auto prepared = prepare_training(data.train, grid.bases[ub], region, opts);
    for (std::size_t i = 0; i < grid.ks.size(); ++i) {
      const auto planner = fit_planner(prepared, grid.ks[i], opts);
      error[ub][i] = error_stats(validation_errors(planner, data.validation, region, config.noise_sigma)).mean;
    }
  }
  return error;
}

void add_repeat(SweepReport& r, const std::vector<std::vector<double>>& error) {
  std::vector<double> means(r.ks.size(), 0.0);
  for (std::size_t b = 0; b < r.bases.size(); ++b) {
    for (std::size_t i = 0; i < r.ks.size(); ++i) {
      r.error[b][i] += error[b][i];
      means[i] += error[b][i];
    }
  }
  for (double& m : means) m /= static_cast<double>(r.bases.size());
  r.mean_by_repeat.push_back(std::move(means));
}

void summarize(SweepReport& r, int k) {
  const double repeats = static_cast<double>(r.mean_by_repeat.size());
  for (auto& row : r.error) {
    for (double& e : row) e /= repeats;
  }
  const double nbases = static_cast<double>(r.bases.size());
  for (std::size_t i = 0; i < r.ks.size(); ++i) {
    double mean = 0.0;
    for (const auto& row : r.error) mean += row[i];
    mean /= nbases;
    // Spread across repeated datasets when there are several, else across bases.
    double var = 0.0;
    double n = 0.0;
    if (r.mean_by_repeat.size() > 1) {
      for (const auto& m : r.mean_by_repeat) var += (m[i] - mean) * (m[i] - mean);
      n = repeats;
    } else {
      for (const auto& row : r.error) var += (row[i] - mean) * (row[i] - mean);
      n = nbases;
    }
    const double sd = n > 1.0 ? std::sqrt(var / (n - 1.0)) : 0.0;
    r.mean_by_k.push_back(mean);
    r.stderr_by_k.push_back(sd / std::sqrt(n));
  }
  std::size_t at_k = 0;
  for (std::size_t i = 0; i < r.ks.size(); ++i) {
    if (r.ks[i] <= k) at_k = i;
  }
  for (const auto& row : r.error) r.mean_by_base.push_back(row[at_k]);
}

}  // namespace

SweepReport run_hyperparam_sweep(const ExperimentConfig& config, const Dataset& data) {
  auto r = sweep_grid(config, std::min(config.sweep_k_max, static_cast<int>(data.train.size())));
  r.seeds.push_back(config.seed);
  add_repeat(r, sweep_errors(config, data, r));
  summarize(r, config.k);
  return r;
}

LoocvReport run_loocv(const ExperimentConfig& config, const Dataset& data) {
  const auto& region = data.set.options.region;
  const auto& all = data.set.workloads;
  require(all.size() >= 2, "loocv: need at least two workloads");
  LoocvReport r;
  r.base = config.base_spec;
  auto opts = training_options(config);
  opts.k = std::min(config.k, static_cast<int>(all.size()) - 1);
  std::vector<double> errors(all.size());
  const auto n = static_cast<std::ptrdiff_t>(all.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    std::vector<const Workload*> train;
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (static_cast<std::ptrdiff_t>(j) != i) train.push_back(&all[j]);
    }
    const auto planner = train_base_planner(train, config.base_spec, region, opts);
    const Workload* held[] = {&all[static_cast<std::size_t>(i)]};
    errors[static_cast<std::size_t>(i)] = validation_errors(planner, held, region, config.noise_sigma).front();
  }
  for (const auto& w : all) r.workload_ids.push_back(w.workload_id);
  r.error = error_stats(std::move(errors));
  return r;
}

namespace {

BasePlanner default_planner(const ExperimentConfig& config, const Dataset& data) {
  return train_base_planner(data.train, config.base_spec, data.set.options.region, training_options(config));
}

}  // namespace

Scenario1Report run_scenario1(const ExperimentConfig& config) {
  const auto data = make_dataset(config);
  return run_scenario1(config, data, default_planner(config, data));
}

Scenario2Report run_scenario2(const ExperimentConfig& config) {
  const auto data = make_dataset(config);
  return run_scenario2(config, data, default_planner(config, data));
}

ColocationReport run_colocation(const ExperimentConfig& config) {
  const auto data = make_dataset(config);
  return run_colocation(config, data, default_planner(config, data));
}

SweepReport run_hyperparam_sweep(const ExperimentConfig& config) {
  auto r = sweep_grid(config, std::min(config.sweep_k_max, config.train));
  for (int rep = 0; rep < config.sweep_repeats; ++rep) {
    auto c = config;
    if (rep > 0) c.seed = mix_seed(config.seed, 200 + static_cast<std::uint64_t>(rep));
    r.seeds.push_back(c.seed);
    add_repeat(r, sweep_errors(c, make_dataset(c), r));
  }
  summarize(r, config.k);
  return r;
}

LoocvReport run_loocv(const ExperimentConfig& config) { return run_loocv(config, make_dataset(config)); }

Json to_json(const Scenario1Report& r) {
  Json j;
  j["origin"] = to_json(r.origin);
  j["planner_error"] = stats_to_json(r.planner_error);
  Json reqs = Json::array();
  for (const auto& o : r.requests) reqs.push_back(outcome_to_json(o));
  j["requests"] = reqs;
  j["total_requests"] = r.requests.size();
  j["feasible"] = r.feasible;
  j["recommended"] = r.recommended;
  j["optimal"] = r.optimal;
  j["satisfied"] = r.satisfied;
  j["max_core_gap"] = r.max_core_gap;
  j["max_memory_gap"] = r.max_memory_gap;
  j["optimal_fraction"] = r.optimal_fraction;
  return j;
}

Json to_json(const Scenario2Report& r) {
  Json j;
  j["origin"] = to_json(r.origin);
  j["epsilon"] = r.epsilon;
  Json reqs = Json::array();
  for (const auto& o : r.requests) reqs.push_back(outcome_to_json(o));
  j["requests"] = reqs;
  j["total_requests"] = r.requests.size();
  j["satisfied"] = r.satisfied;
  j["origin_total"] = to_json(r.origin_total);
  j["recommended_total"] = to_json(r.recommended_total);
  j["oracle_total"] = to_json(r.oracle_total);
  j["core_reduction"] = r.core_reduction;
  j["memory_reduction"] = r.memory_reduction;
  j["core_excess"] = r.core_excess;
  j["memory_excess"] = r.memory_excess;
  return j;
}

Json to_json(const ColocationReport& r) {
  Json j;
  j["workloads_per_trial"] = r.workloads_per_trial;
  Json trials = Json::array();
  for (const auto& t : r.trials) {
    Json tj;
    tj["trial"] = t.trial;
    tj["seed"] = t.seed;
    tj["aborted"] = t.aborted;
    tj["abort_reason"] = t.abort_reason;
    tj["origin_total"] = to_json(t.origin_total);
    tj["recommended_total"] = to_json(t.recommended_total);
    tj["core_reduction"] = t.core_reduction;
    tj["memory_reduction"] = t.memory_reduction;
    tj["plans_satisfied"] = t.plans_satisfied;
    tj["profile_levels_within_one"] = t.profile_levels_within_one;
    tj["p_sys_ursa"] = t.p_sys_ursa;
    tj["p_sys_lrp"] = t.p_sys_lrp;
    tj["p_sys_ratio"] = t.p_sys_ratio;
    tj["unfairness_ursa"] = t.unfairness_ursa;
    tj["unfairness_lrp"] = t.unfairness_lrp;
    tj["unfairness_ratio"] = t.unfairness_ratio;
    auto placements = [](const std::vector<Placement>& ps) {
      Json a = Json::array();
      for (const auto& p : ps) a.push_back({{"workload_id", p.workload_id}, {"node_id", p.node_id}, {"score", p.score}});
      return a;
    };
    tj["ursa_placements"] = placements(t.ursa_placements);
    tj["lrp_placements"] = placements(t.lrp_placements);
    trials.push_back(std::move(tj));
  }
  j["trials"] = trials;
  j["unfairness_wins"] = r.unfairness_wins;
  j["mean_unfairness_reduction"] = r.mean_unfairness_reduction;
  j["min_p_sys_ratio"] = r.min_p_sys_ratio;
  j["mean_core_reduction"] = r.mean_core_reduction;
  j["mean_memory_reduction"] = r.mean_memory_reduction;
  return j;
}

Json to_json(const SweepReport& r) {
  Json j;
  j["ks"] = r.ks;
  Json bases = Json::array();
  for (auto b : r.bases) bases.push_back(to_json(b));
  j["bases"] = bases;
  j["seeds"] = r.seeds;
  j["error"] = r.error;
  j["mean_by_repeat"] = r.mean_by_repeat;
  j["mean_by_k"] = r.mean_by_k;
  j["stderr_by_k"] = r.stderr_by_k;
  j["mean_by_base"] = r.mean_by_base;
  return j;
}

Json to_json(const LoocvReport& r) {
  Json j;
  j["base_spec"] = to_json(r.base);
  j["workload_ids"] = r.workload_ids;
  j["error"] = stats_to_json(r.error);
  return j;
}

std::string scenario_to_csv(std::span<const PlanningOutcome> requests) {
  std::ostringstream out;
  out.precision(17);
  out << "workload_id,target,recommended_cores,recommended_memory_gb,oracle_cores,oracle_memory_gb,optimal,satisfied\n";
  for (const auto& o : requests) {
    out << o.workload_id << ',' << o.target << ',';
    if (o.recommended) {
      out << o.recommended->cores << ',' << o.recommended->memory_gb << ',';
    } else {
      out << ",,";
    }
    if (o.oracle) {
      out << o.oracle->cores << ',' << o.oracle->memory_gb << ',';
    } else {
      out << ",,";
    }
    out << o.optimal << ',' << o.satisfied << '\n';
  }
  return out.str();
}

std::string colocation_to_csv(const ColocationReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "trial,aborted,origin_cores,origin_memory_gb,recommended_cores,recommended_memory_gb,p_sys_ursa,p_sys_lrp,"
         "unfairness_ursa,unfairness_lrp\n";
  for (const auto& t : r.trials) {
    out << t.trial << ',' << t.aborted << ',' << t.origin_total.cores << ',' << t.origin_total.memory_gb << ','
        << t.recommended_total.cores << ',' << t.recommended_total.memory_gb << ',' << t.p_sys_ursa << ','
        << t.p_sys_lrp << ',' << t.unfairness_ursa << ',' << t.unfairness_lrp << '\n';
  }
  return out.str();
}

std::string sweep_to_csv(const SweepReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "base_cores,base_memory_gb,k,mean_error\n";
  for (std::size_t b = 0; b < r.bases.size(); ++b) {
    for (std::size_t i = 0; i < r.ks.size(); ++i) {
      out << r.bases[b].cores << ',' << r.bases[b].memory_gb << ',' << r.ks[i] << ',' << r.error[b][i] << '\n';
    }
  }
  return out.str();
}

}  // namespace rightsize
