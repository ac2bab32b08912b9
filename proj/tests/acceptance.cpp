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


// Acceptance runner: prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invariants.hpp"
#include "rightsize/experiment.hpp"
#include "rightsize/io.hpp"

namespace fs = std::filesystem;
using namespace rightsize;
using namespace rightsize::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

Outcome formula_oracles() {
  const int r = check_risk_oracle(1000, 101);
  const int s = check_score_oracle(1000, 102);
  const int e = check_surface_error_oracle(1000, 103);
  const int m = check_metrics_oracle(1000, 104);
  return {r + s + e + m == 0, "mismatches risk=" + std::to_string(r) + " score=" + std::to_string(s) +
                                  " error=" + std::to_string(e) + " metrics=" + std::to_string(m)};
}

Outcome planner_accuracy(const ExperimentConfig& c, const Dataset& data, const BasePlanner& planner) {
  const auto st = error_stats(validation_errors(planner, data.validation, data.set.options.region, c.noise_sigma));
  return {st.mean <= 0.10 && st.max <= 0.20, "mean=" + fmt(st.mean) + " max=" + fmt(st.max)};
}

Outcome scenario1(const ExperimentConfig& c) {
  const auto r = run_scenario1(c);
  int with_rec = 0;
  int feasible_unanswered = 0;
  for (const auto& o : r.requests) {
    with_rec += o.recommended.has_value();
    feasible_unanswered += o.oracle.has_value() && !o.recommended.has_value();
  }
  const bool pass = r.feasible > 0 && r.optimal >= 0.75 * r.feasible && r.satisfied == with_rec &&
                    feasible_unanswered == 0 && r.max_core_gap <= 2 && r.max_memory_gap <= 4;
  return {pass, "optimal " + std::to_string(r.optimal) + "/" + std::to_string(r.feasible) + " satisfied " +
                    std::to_string(r.satisfied) + "/" + std::to_string(with_rec) + " gaps +" +
                    std::to_string(r.max_core_gap) + "C/+" + std::to_string(r.max_memory_gap) + "G"};
}

Outcome scenario2(const ExperimentConfig& c) {
  const auto r = run_scenario2(c);
  const bool pass = r.satisfied == static_cast<int>(r.requests.size()) && r.core_reduction > 0.0 &&
                    r.memory_reduction > 0.0 && r.core_excess <= 0.15 && r.memory_excess <= 0.10;
  return {pass, "satisfied " + std::to_string(r.satisfied) + "/" + std::to_string(r.requests.size()) +
                    " reduction cores=" + fmt(r.core_reduction) + " mem=" + fmt(r.memory_reduction) +
                    " excess cores=" + fmt(r.core_excess) + " mem=" + fmt(r.memory_excess)};
}

Outcome estimator_recovery(const ExperimentConfig& c) {
  const auto set = generate_workload_set(c.archetypes, 100, c.seed + 5, c.synth);
  const auto& node = c.synth.node;
  const auto est = EstimatorConfig::defaults(node);
  int off = 0;
  int identity = 0;
  for (const auto& w : set.workloads) {
    const auto p = estimate_profile(w, est, node);
    for (std::size_t r = 0; r < kNumSharedResources; ++r) {
      off += std::abs(p.levels[r].pressure - w.ground_truth_profile.levels[r].pressure) > 1;
      off += std::abs(p.levels[r].sensitivity - w.ground_truth_profile.levels[r].sensitivity) > 1;
    }
    SimulatedProbe m(w.footprint, node);
    const auto mb = quantify_membw(m, node.levels);
    SimulatedProbe d(w.footprint, node);
    const auto db = quantify_disk(d, node.levels, node.iops_scaler);
    SimulatedProbe n(w.footprint, node);
    const auto nb = quantify_network(n, node.levels);
    for (const auto* b : {&mb, &db, &nb}) identity += b->levels.sensitivity != node.levels - b->max_level;
  }
  return {off == 0 && identity == 0,
          "levels off by >1: " + std::to_string(off) + ", identity violations: " + std::to_string(identity)};
}

Outcome colocation(const ExperimentConfig& c) {
  const auto r = run_colocation(c);
  int aborted = 0;
  for (const auto& t : r.trials) aborted += t.aborted;
  const bool pass = aborted == 0 && r.unfairness_wins >= 9 && r.mean_unfairness_reduction >= 0.30 &&
                    r.min_p_sys_ratio >= 0.98;
  return {pass, "wins " + std::to_string(r.unfairness_wins) + "/" + std::to_string(r.trials.size()) +
                    " mean reduction=" + fmt(r.mean_unfairness_reduction) + " min p_sys ratio=" +
                    fmt(r.min_p_sys_ratio) + " aborted=" + std::to_string(aborted)};
}

Outcome sweep(const ExperimentConfig& c) {
  const auto r = run_hyperparam_sweep(c);
  std::map<int, std::size_t> at;
  for (std::size_t i = 0; i < r.ks.size(); ++i) at[r.ks[i]] = i;
  if (!at.count(2) || !at.count(20) || !at.count(30)) return {false, "sweep does not cover K=2..30"};
  int rises = 0;
  for (int k1 = 2; k1 <= 20; ++k1) {
    for (int k2 = k1 + 1; k2 <= 20; ++k2) {
      const auto i = at.at(k1);
      rises += r.mean_by_k[at.at(k2)] > r.mean_by_k[i] + r.stderr_by_k[i];
    }
  }
  const double e20 = r.mean_by_k[at.at(20)];
  double worst = 0.0;
  for (int k = 20; k <= 30; ++k) worst = std::max(worst, std::fabs(r.mean_by_k[at.at(k)] - e20) / e20);
  double base68 = -1.0;
  double base12 = -1.0;
  for (std::size_t b = 0; b < r.bases.size(); ++b) {
    if (r.bases[b] == ResourceSpec{6, 8}) base68 = r.mean_by_base[b];
    if (r.bases[b] == ResourceSpec{1, 2}) base12 = r.mean_by_base[b];
  }
  const bool pass = rises == 0 && worst <= 0.20 && base68 >= 0.0 && base12 >= 0.0 && base68 <= base12;
  return {pass, "e(2)=" + fmt(r.mean_by_k[at.at(2)]) + " e(20)=" + fmt(e20) + " rises=" + std::to_string(rises) +
                    " max |e(K)-e(20)|/e(20)=" + fmt(worst) + " base(6,8)=" + fmt(base68) + " base(1,2)=" + fmt(base12)};
}

int run(const std::string& cmd) { return std::system((cmd + " > /dev/null 2>&1").c_str()); }

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = read_text_file(e.path());
  }
  return out;
}

Outcome determinism(const std::string& cli, const fs::path& scratch) {
  ExperimentConfig c;
  c.archetypes = 6;
  c.workloads = 24;
  c.train = 18;
  c.validation = 6;
  c.k = 6;
  c.classifier.mlp.epochs = 100;
  c.trials = 2;
  c.colocation_workloads = 20;
  c.sweep_k_max = 6;
  c.sweep_repeats = 2;
  c.sweep_bases = {{6, 8}, {1, 2}};
  fs::remove_all(scratch);
  fs::create_directories(scratch);
  const auto cfg = scratch / "config.json";
  write_json_file(cfg, to_json(c));

  const std::vector<std::string> commands = {
      "gen", "train --bases '6,8;1,2'", "calibrate", "estimate", "scenario1", "scenario2", "colocate", "sweep", "loocv"};
  std::vector<std::map<std::string, std::string>> runs;
  int failures = 0;
  for (int rep = 0; rep < 2; ++rep) {
    const auto out = scratch / ("run" + std::to_string(rep));
    const std::string g = cli + " --config " + cfg.string() + " --out " + out.string() + " ";
    for (const auto& cmd : commands) failures += run(g + cmd) != 0;
    const auto o = out.string();
    failures += run(g + "plan --model " + o + "/model.json --indexes " + o + "/indexes.json --current 12,16 --policy down --base 6,8") != 0;
    failures += run(g + "schedule --profiles " + o + "/profiles.json --policy ursa") != 0;
    failures += run(g + "simulate --placements " + o + "/placements.jsonl --profiles " + o + "/profiles.json --workloads " +
                    o + "/workloads.json") != 0;
    runs.push_back(snapshot(out));
  }
  int differing = 0;
  for (const auto& [name, bytes] : runs[0]) {
    const auto it = runs[1].find(name);
    differing += it == runs[1].end() || it->second != bytes;
  }
  differing += runs[0].size() != runs[1].size();
  return {failures == 0 && differing == 0 && runs[0].size() >= 12,
          std::to_string(runs[0].size()) + " files compared, " + std::to_string(differing) + " differ, " +
              std::to_string(failures) + " command failures"};
}

Outcome invariants() {
  const int s = check_surface_monotonicity(1000, 901);
  const int c = check_scheduler_conservation(1000, 902);
  const int m = check_simulator_monotonicity(1000, 903);
  return {s + c + m == 0, "failing cases surface=" + std::to_string(s) + " scheduler=" + std::to_string(c) +
                              " simulator=" + std::to_string(m)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria runner"};
  std::string cli;
  std::string scratch = (fs::temp_directory_path() / "rightsize_acceptance").string();
  app.add_option("--cli", cli, "Path to the rightsize executable")->required();
  app.add_option("--scratch", scratch, "Scratch directory for CLI outputs");
  CLI11_PARSE(app, argc, argv);

  const ExperimentConfig config;
  std::optional<Dataset> data;
  std::optional<BasePlanner> planner;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"formula oracles", formula_oracles},
      {"planner accuracy",
       [&] {
         data.emplace(make_dataset(config));
         planner.emplace(train_base_planner(data->train, config.base_spec, data->set.options.region,
                                            training_options(config)));
         return planner_accuracy(config, *data, *planner);
       }},
      {"scenario 1 scale-up", [&] { return scenario1(config); }},
      {"scenario 2 scale-down", [&] { return scenario2(config); }},
      {"estimator recovery", [&] { return estimator_recovery(config); }},
      {"co-location comparison", [&] { return colocation(config); }},
      {"cluster-count and base sweep", [&] { return sweep(config); }},
      {"determinism", [&] { return determinism(cli, scratch); }},
      {"invariant suites", invariants},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << " ("
              << fmt(secs) << " s)" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
