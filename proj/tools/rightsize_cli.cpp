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

// rightsize: command-line front end.
//
// Exit status: 0 success, 2 when the only problem is an unsatisfiable
// planning request, 1 on any other error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rightsize/common.hpp"
#include "rightsize/experiment.hpp"
#include "rightsize/io.hpp"

namespace fs = std::filesystem;
using namespace rightsize;

namespace {

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
};

ExperimentConfig load_config(const Globals& g) {
  ExperimentConfig c = g.config_path.empty() ? config_from_json(Json::object()) : config_from_json(read_json_file(g.config_path));
  if (g.seed) c.seed = *g.seed;
  c.validate();
  return c;
}

Json report_envelope(const std::string& kind, const ExperimentConfig& c, Json report) {
  Json j;
  j["schema"] = "rightsize.report";
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["config"] = to_json(c);
  j["report"] = std::move(report);
  return j;
}

WorkloadSet load_or_generate(const std::string& path, const ExperimentConfig& c) {
  return path.empty() ? generate_dataset_workloads(c) : workload_set_from_json(read_json_file(path));
}

std::vector<ResourceSpec> parse_bases(const std::string& text, const ExperimentConfig& c) {
  std::vector<ResourceSpec> out;
  if (text == "all") {
    for (std::size_t i = 0; i < c.synth.region.size(); ++i) out.push_back(c.synth.region.at(i));
    return out;
  }
  if (text.empty()) return {c.base_spec};
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(';', start);
    out.push_back(parse_spec(text.substr(start, end == std::string::npos ? std::string::npos : end - start)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

struct IndexRecord {
  std::optional<int> workload_id;
  SystemIndexVector indexes;
};

std::vector<IndexRecord> load_index_records(const Json& j) {
  std::vector<IndexRecord> out;
  if (j.is_object() && j.contains("vectors")) {
    check_schema(j, "rightsize.indexes");
    for (const auto& v : j["vectors"]) {
      out.push_back({v.at("workload_id").get<int>(), indexes_from_json(v.at("indexes"))});
    }
  } else if (j.is_object() && j.contains("indexes")) {
    out.push_back({std::nullopt, indexes_from_json(j["indexes"])});
  } else {
    out.push_back({std::nullopt, indexes_from_json(j)});
  }
  return out;
}

std::string spec_text(ResourceSpec s) { return to_string(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity planning and contention-aware placement for database instances"};
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed_value = 0;
  app.add_option("--config", g.config_path, "Experiment configuration (JSON)");
  auto* seed_opt = app.add_option("--seed", seed_value, "Override the configuration seed");
  app.add_option("--out", g.out, "Output directory");

  auto* gen = app.add_subcommand("gen", "Generate a workload set and its index observations");

  std::string workloads_path, bases_text;
  auto* train = app.add_subcommand("train", "Train the planner model bundle");
  train->add_option("--workloads", workloads_path, "Workload set (default: generated from the config)");
  train->add_option("--bases", bases_text, "Base specs: 'all' or '6,8;1,2' (default: config base_spec)");

  auto* calibrate = app.add_subcommand("calibrate", "Record reference LLC kmps tracks");

  std::string model_path, indexes_path, current_text, policy_text = "up", base_text;
  double target = 1.0;
  std::optional<double> epsilon;
  auto* plan = app.add_subcommand("plan", "Recommend a specification from observed indexes");
  plan->add_option("--model", model_path, "Model bundle")->required();
  plan->add_option("--indexes", indexes_path, "Index vector file")->required();
  plan->add_option("--current", current_text, "Current specification, e.g. 1,2")->required();
  plan->add_option("--policy", policy_text, "up or down")->check(CLI::IsMember({"up", "down"}));
  plan->add_option("--target", target, "Scale-up target relative to the current spec");
  plan->add_option("--epsilon", epsilon, "Scale-down performance tolerance");
  plan->add_option("--base", base_text, "Base specification the indexes were observed at");

  std::string references_path;
  auto* estimate = app.add_subcommand("estimate", "Quantify interference profiles on the simulated probe");
  estimate->add_option("--workloads", workloads_path, "Workload set (default: generated from the config)");
  estimate->add_option("--references", references_path, "Reference kmps tracks (default: calibrated)");

  std::string profiles_path, nodes_path, sched_policy = "ursa";
  std::optional<double> scaler;
  bool usage_before = false;
  auto* schedule = app.add_subcommand("schedule", "Place workloads on nodes");
  schedule->add_option("--profiles", profiles_path, "Workload specs and profiles")->required();
  schedule->add_option("--nodes", nodes_path, "Node inventory (default: config cluster)");
  schedule->add_option("--policy", sched_policy, "ursa or lrp")->check(CLI::IsMember({"ursa", "lrp"}));
  schedule->add_option("--scaler", scaler, "Contention risk base (> 1)");
  schedule->add_flag("--usage-before", usage_before, "Score with pre-placement usage");

  std::string placements_path;
  auto* simulate = app.add_subcommand("simulate", "Simulate co-located execution of a placement");
  simulate->add_option("--placements", placements_path, "Placement log (JSON lines)")->required();
  simulate->add_option("--profiles", profiles_path, "Workload specs and profiles")->required();
  simulate->add_option("--workloads", workloads_path, "Workload set supplying ground-truth profiles");
  simulate->add_option("--nodes", nodes_path, "Node inventory (default: config cluster)");

  auto* scenario1 = app.add_subcommand("scenario1", "Scale-up planning evaluation");
  auto* scenario2 = app.add_subcommand("scenario2", "Scale-down planning evaluation");
  auto* colocate = app.add_subcommand("colocate", "Co-location comparison against least-requested placement");
  auto* sweep = app.add_subcommand("sweep", "Cluster-count and base-configuration sweep");
  auto* loocv = app.add_subcommand("loocv", "Leave-one-out planner validation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (*seed_opt) g.seed = seed_value;

  try {
    const auto config = load_config(g);
    const fs::path out = g.out;

    if (*gen) {
      const auto set = generate_dataset_workloads(config);
      write_json_file(out / "workloads.json", to_json(set));
      Json idx;
      idx["schema"] = "rightsize.indexes";
      idx["schema_version"] = kSchemaVersion;
      idx["base_spec"] = to_json(config.base_spec);
      idx["noise_sigma"] = config.noise_sigma;
      Json vectors = Json::array();
      for (const auto& w : set.workloads) {
        vectors.push_back({{"workload_id", w.workload_id},
                           {"indexes", to_json(observe_indexes(w, config.base_spec, config.noise_sigma,
                                                               set.options.region))}});
      }
      idx["vectors"] = vectors;
      write_json_file(out / "indexes.json", idx);
      std::cout << "generated " << set.workloads.size() << " workloads over " << set.archetypes.size()
                << " archetypes\n";
    } else if (*train) {
      auto data = split_dataset(load_or_generate(workloads_path, config), config);
      const auto bases = parse_bases(bases_text, config);
      const auto model = train_model(data, config, bases);
      write_json_file(out / "model.json", to_json(model));
      for (const auto& [base, p] : model.by_base) {
        const auto s = error_stats(validation_errors(p, data.validation, model.region, config.noise_sigma));
        std::cout << spec_text(base) << " features=" << p.selection.selected.size() << " k=" << p.clustering.k
                  << " validation mean=" << s.mean << " max=" << s.max << "\n";
      }
    } else if (*calibrate) {
      const auto tracks = calibrate_reference_tracks(config.synth.node);
      write_json_file(out / "reference_tracks.json", reference_tracks_to_json(tracks, config.synth.node));
      std::cout << "calibrated " << tracks.size() << " reference tracks\n";
    } else if (*plan) {
      const auto model = planner_model_from_json(read_json_file(model_path));
      const auto idx_json = read_json_file(indexes_path);
      ResourceSpec base = config.base_spec;
      if (!base_text.empty()) {
        base = parse_spec(base_text);
      } else if (idx_json.is_object() && idx_json.contains("base_spec")) {
        base = spec_from_json(idx_json["base_spec"]);
      }
      const auto& planner = model.at(base);
      PlanningRequest req;
      req.policy = policy_text == "up" ? PlanningPolicy::kScaleUp : PlanningPolicy::kScaleDown;
      req.current_spec = parse_spec(current_text);
      req.target_speedup = target;
      req.performance_tolerance = epsilon.value_or(config.epsilon);
      req.cost_weights = config.cost_weights;
      model.region.require_index(req.current_spec);

      Json result;
      result["schema"] = "rightsize.plan";
      result["schema_version"] = kSchemaVersion;
      result["policy"] = policy_text;
      result["current_spec"] = to_json(req.current_spec);
      result["target_speedup"] = req.target_speedup;
      result["performance_tolerance"] = req.performance_tolerance;
      Json recs = Json::array();
      bool any_infeasible = false;
      for (const auto& rec : load_index_records(idx_json)) {
        Json r;
        r["workload_id"] = rec.workload_id ? Json(*rec.workload_id) : Json(nullptr);
        const auto surface = planner.predict(rec.indexes);
        try {
          const auto spec = plan_capacity(req, surface);
          r["recommended"] = to_json(spec);
          std::cout << (rec.workload_id ? std::to_string(*rec.workload_id) + " " : "") << spec_text(spec) << "\n";
        } catch (const Infeasible&) {
          any_infeasible = true;
          r["recommended"] = nullptr;
          std::cout << (rec.workload_id ? std::to_string(*rec.workload_id) + " " : "") << "infeasible\n";
        }
        recs.push_back(std::move(r));
      }
      result["recommendations"] = recs;
      write_json_file(out / "plan.json", result);
      if (any_infeasible) return 2;
    } else if (*estimate) {
      const auto set = load_or_generate(workloads_path, config);
      auto est = EstimatorConfig::defaults(set.options.node);
      if (!references_path.empty()) est.reference_tracks = reference_tracks_from_json(read_json_file(references_path));
      std::vector<ProfileRecord> records;
      for (const auto& w : set.workloads) {
        records.push_back({w.workload_id, w.origin_spec, estimate_profile(w, est, set.options.node)});
      }
      write_json_file(out / "profiles.json", profiles_to_json(records));
      std::cout << "estimated " << records.size() << " profiles\n";
    } else if (*schedule) {
      const auto records = profiles_from_json(read_json_file(profiles_path));
      auto nodes = nodes_path.empty() ? make_nodes(config.cluster.nodes, config.cluster.node_capacity)
                                      : nodes_from_json(read_json_file(nodes_path));
      ScheduleConfig sc{scaler.value_or(config.scaler),
                        sched_policy == "ursa" ? SchedulingPolicy::kContentionAware : SchedulingPolicy::kLeastRequested,
                        usage_before ? false : config.usage_after_placement};
      Scheduler s(std::move(nodes), sc);
      for (const auto& r : records) s.place({r.workload_id, r.spec, r.profile});
      write_text_file(out / "placements.jsonl", placements_to_jsonl(s.log()));
      std::cout << "placed " << s.log().size() << " workloads on " << s.nodes().size() << " nodes\n";
    } else if (*simulate) {
      const auto placements = placements_from_jsonl(read_text_file(placements_path));
      const auto records = profiles_from_json(read_json_file(profiles_path));
      std::map<int, ProfileRecord> by_id;
      for (const auto& r : records) by_id[r.workload_id] = r;
      std::map<int, InterferenceProfile> truth;
      if (!workloads_path.empty()) {
        for (const auto& w : workload_set_from_json(read_json_file(workloads_path)).workloads) {
          truth[w.workload_id] = w.ground_truth_profile;
        }
      }
      ClusterSpec cluster = config.cluster;
      if (!nodes_path.empty()) {
        const auto nodes = nodes_from_json(read_json_file(nodes_path));
        cluster.nodes = static_cast<int>(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          require(nodes[i].node_id == static_cast<int>(i), "simulate: node ids must be 0..n-1");
          require(nodes[i].capacity == nodes.front().capacity, "simulate: nodes must share one capacity");
        }
        cluster.node_capacity = nodes.front().capacity;
      }
      std::vector<PlacedWorkload> placed;
      for (const auto& p : placements) {
        const auto it = by_id.find(p.workload_id);
        require(it != by_id.end(), "simulate: no profile for workload " + std::to_string(p.workload_id));
        const auto t = truth.find(p.workload_id);
        placed.push_back({p.workload_id, p.node_id, it->second.spec,
                          t != truth.end() ? t->second : it->second.profile});
      }
      const auto report = simulate_colocated(placed, cluster);
      write_json_file(out / "simulation.json", to_json(report));
      write_text_file(out / "simulation.csv", slowdowns_to_csv(report));
      std::cout << "p_sys=" << report.metrics.p_sys << " unfairness=" << report.metrics.unfairness << "\n";
    } else if (*scenario1) {
      const auto r = run_scenario1(config);
      write_json_file(out / "scenario1.json", report_envelope("scenario1", config, to_json(r)));
      write_text_file(out / "scenario1.csv", scenario_to_csv(r.requests));
      std::cout << "optimal " << r.optimal << "/" << r.feasible << " feasible, satisfied " << r.satisfied << "/"
                << r.recommended << " recommended, max gap +" << r.max_core_gap << "C +" << r.max_memory_gap
                << "G, planner error mean=" << r.planner_error.mean << " max=" << r.planner_error.max << "\n";
    } else if (*scenario2) {
      const auto r = run_scenario2(config);
      write_json_file(out / "scenario2.json", report_envelope("scenario2", config, to_json(r)));
      write_text_file(out / "scenario2.csv", scenario_to_csv(r.requests));
      std::cout << "satisfied " << r.satisfied << "/" << r.requests.size() << ", core reduction "
                << r.core_reduction << ", memory reduction " << r.memory_reduction << ", excess cores "
                << r.core_excess << " memory " << r.memory_excess << "\n";
    } else if (*colocate) {
      const auto r = run_colocation(config);
      write_json_file(out / "colocate.json", report_envelope("colocate", config, to_json(r)));
      write_text_file(out / "colocate.csv", colocation_to_csv(r));
      std::cout << "unfairness wins " << r.unfairness_wins << "/" << r.trials.size() << ", mean reduction "
                << r.mean_unfairness_reduction << ", min p_sys ratio " << r.min_p_sys_ratio << ", cores -"
                << r.mean_core_reduction << ", memory -" << r.mean_memory_reduction << "\n";
    } else if (*sweep) {
      const auto r = run_hyperparam_sweep(config);
      write_json_file(out / "sweep.json", report_envelope("sweep", config, to_json(r)));
      write_text_file(out / "sweep.csv", sweep_to_csv(r));
      for (std::size_t i = 0; i < r.ks.size(); ++i) {
        std::cout << "k=" << r.ks[i] << " mean=" << r.mean_by_k[i] << " se=" << r.stderr_by_k[i] << "\n";
      }
    } else if (*loocv) {
      const auto r = run_loocv(config);
      write_json_file(out / "loocv.json", report_envelope("loocv", config, to_json(r)));
      std::cout << "rounds=" << r.error.errors.size() << " mean=" << r.error.mean << " max=" << r.error.max << "\n";
    }
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
