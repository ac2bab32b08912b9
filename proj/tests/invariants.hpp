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


// Brute-force oracles and randomized invariant checks shared by the property
// tests and the acceptance runner. Each check returns the number of failing
// cases out of `cases`.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rightsize/common.hpp"
#include "rightsize/estimator.hpp"
#include "rightsize/planner.hpp"
#include "rightsize/scheduler.hpp"
#include "rightsize/simulator.hpp"
#include "rightsize/workload_synth.hpp"
#include "support.hpp"

namespace rightsize::testing {

inline bool close_rel(double a, double b, double tol = 1e-12) {
  return std::fabs(a - b) <= tol * std::max({std::fabs(a), std::fabs(b), 1e-300});
}

inline double oracle_risk(const std::vector<long long>& sum_p, const std::vector<long long>& max_s, double scaler) {
  long double total = 0;
  for (std::size_t r = 0; r < sum_p.size(); ++r) {
    long double penalty = 1;
    for (long long i = 0; i < sum_p[r]; ++i) penalty *= scaler;
    total += static_cast<long double>(max_s[r]) * static_cast<long double>(sum_p[r]) * penalty;
  }
  return static_cast<double>(total);
}

inline double oracle_score(const NodeState& node, const DeployedWorkload& incoming, double scaler, bool after) {
  std::vector<long long> sum_p(kNumSharedResources, 0);
  std::vector<long long> max_s(kNumSharedResources, 0);
  long long cores = 0;
  long long mem = 0;
  auto add = [&](const DeployedWorkload& w) {
    for (std::size_t r = 0; r < kNumSharedResources; ++r) {
      sum_p[r] += w.profile.levels[r].pressure;
      max_s[r] = std::max<long long>(max_s[r], w.profile.levels[r].sensitivity);
    }
  };
  for (const auto& w : node.deployed) {
    add(w);
    cores += w.spec.cores;
    mem += w.spec.memory_gb;
  }
  add(incoming);
  if (after) {
    cores += incoming.spec.cores;
    mem += incoming.spec.memory_gb;
  }
  const double usage = (static_cast<double>(cores) / node.capacity.cores +
                        static_cast<double>(mem) / node.capacity.memory_gb) / 2.0;
  return oracle_risk(sum_p, max_s, scaler) * usage;
}

inline double oracle_surface_error(const std::vector<double>& predicted, const std::vector<double>& actual) {
  long double sum = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) sum += std::fabs(static_cast<long double>(predicted[i]) / actual[i] - 1.0L);
  return static_cast<double>(sum / actual.size());
}

inline Metrics oracle_metrics(const std::vector<double>& sd) {
  long double p = 0;
  double hi = sd.front();
  double lo = sd.front();
  for (double s : sd) {
    p += s;
    hi = std::max(hi, s);
    lo = std::min(lo, s);
  }
  return {static_cast<double>(p), (hi - lo) / hi};
}

inline std::optional<ResourceSpec> oracle_plan(const PlanningRequest& req, const ScalingSurface& s) {
  std::optional<ResourceSpec> best;
  const auto& region = s.region();
  const double cur = s.speedup(req.current_spec);
  for (int c : region.core_levels()) {
    for (int m : region.memory_levels()) {
      const double v = s.speedup({c, m});
      const bool ok = req.policy == PlanningPolicy::kScaleUp
                          ? v >= req.target_speedup * cur * (1.0 - kSpeedupSlack)
                          : v >= (1.0 - req.performance_tolerance) * cur * (1.0 - kSpeedupSlack);
      if (!ok) continue;
      const double cost = req.cost_weights.cost({c, m});
      if (!best) {
        best = ResourceSpec{c, m};
        continue;
      }
      const double bc = req.cost_weights.cost(*best);
      if (cost < bc - 1e-12 || (std::fabs(cost - bc) <= 1e-12 && ResourceSpec{c, m} < *best)) best = ResourceSpec{c, m};
    }
  }
  return best;
}

inline NodeState random_node(std::mt19937_64& rng, int id) {
  NodeState n(id, {96, 256});
  std::uniform_int_distribution<int> count(0, 8);
  std::uniform_int_distribution<int> cores(1, 12);
  std::uniform_int_distribution<int> mem(2, 32);
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    DeployedWorkload w{i, {cores(rng), mem(rng)}, random_profile(rng)};
    if (n.fits(w.spec)) n.deploy(w);
  }
  return n;
}

inline int check_risk_oracle(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> p(0, 60);
  std::uniform_int_distribution<int> s(0, 20);
  std::uniform_real_distribution<double> sc(1.01, 1.5);
  int bad = 0;
  for (int t = 0; t < cases; ++t) {
    std::vector<int> sp(kNumSharedResources), ms(kNumSharedResources);
    std::vector<long long> spl(kNumSharedResources), msl(kNumSharedResources);
    for (std::size_t r = 0; r < kNumSharedResources; ++r) {
      spl[r] = sp[r] = p(rng);
      msl[r] = ms[r] = s(rng);
    }
    const double scaler = sc(rng);
    bad += !close_rel(contention_risk(sp, ms, scaler), oracle_risk(spl, msl, scaler));
  }
  return bad;
}

inline int check_score_oracle(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sc(1.01, 1.5);
  std::bernoulli_distribution coin(0.5);
  int bad = 0;
  for (int t = 0; t < cases; ++t) {
    const auto node = random_node(rng, 0);
    const DeployedWorkload in{99, {1 + t % 8, 2 + t % 16}, random_profile(rng)};
    ScheduleConfig cfg;
    cfg.scaler = sc(rng);
    cfg.usage_after_placement = coin(rng);
    bad += !close_rel(score_node(node, in, cfg), oracle_score(node, in, cfg.scaler, cfg.usage_after_placement));
  }
  return bad;
}

inline int check_surface_error_oracle(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> v(0.05, 20.0);
  std::uniform_int_distribution<int> len(1, 64);
  int bad = 0;
  for (int t = 0; t < cases; ++t) {
    std::vector<double> a(static_cast<std::size_t>(len(rng))), b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = v(rng);
      b[i] = v(rng);
    }
    bad += !close_rel(surface_error(std::span<const double>(a), std::span<const double>(b)), oracle_surface_error(a, b));
  }
  return bad;
}

inline int check_metrics_oracle(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> v(0.01, 1.0);
  std::uniform_int_distribution<int> len(1, 100);
  int bad = 0;
  for (int t = 0; t < cases; ++t) {
    std::vector<double> sd(static_cast<std::size_t>(len(rng)));
    for (auto& x : sd) x = v(rng);
    const auto got = compute_metrics(sd);
    const auto want = oracle_metrics(sd);
    bad += !(close_rel(got.p_sys, want.p_sys) && close_rel(got.unfairness, want.unfairness));
  }
  return bad;
}

// Ground-truth surfaces of generated workloads never lose throughput when
// either resource grows, at any rebasing.
inline int check_surface_monotonicity(int cases, std::uint64_t seed) {
  SynthOptions opt;
  const auto set = generate_workload_set(20, cases, seed, opt);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, opt.region.size() - 1);
  int bad = 0;
  for (const auto& w : set.workloads) {
    const auto s = w.ground_truth_surface.rebased(opt.region.at(pick(rng)));
    bool ok = true;
    const auto& cl = opt.region.core_levels();
    const auto& ml = opt.region.memory_levels();
    for (std::size_t i = 0; i < cl.size(); ++i) {
      for (std::size_t j = 0; j < ml.size(); ++j) {
        const double v = s.speedup({cl[i], ml[j]});
        ok &= v > 0.0 && std::isfinite(v);
        if (i + 1 < cl.size()) ok &= s.speedup({cl[i + 1], ml[j]}) >= v;
        if (j + 1 < ml.size()) ok &= s.speedup({cl[i], ml[j + 1]}) >= v;
      }
    }
    ok &= s.is_monotone() && s.speedup(s.base_spec()) == 1.0;
    bad += !ok;
  }
  return bad;
}

// plan_capacity agrees with an exhaustive scan and never returns a spec that
// misses the request.
inline int check_planner_oracle(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto region = ConfigRegion::default_region();
  std::uniform_real_distribution<double> ex(0.0, 1.0);
  std::uniform_real_distribution<double> target(1.0, 8.0);
  std::uniform_real_distribution<double> tol(0.0, 0.3);
  std::uniform_real_distribution<double> w(0.1, 2.0);
  std::uniform_int_distribution<std::size_t> pick(0, region.size() - 1);
  std::bernoulli_distribution coin(0.5);
  int bad = 0;
  for (int t = 0; t < cases; ++t) {
    const double a = ex(rng);
    const double b = ex(rng);
    const auto s = surface_from(region, region.at(pick(rng)), [&](ResourceSpec x) {
      return std::pow(x.cores, a) * std::pow(x.memory_gb, b);
    });
    PlanningRequest req;
    req.policy = coin(rng) ? PlanningPolicy::kScaleUp : PlanningPolicy::kScaleDown;
    req.current_spec = region.at(pick(rng));
    req.target_speedup = target(rng);
    req.performance_tolerance = tol(rng);
    req.cost_weights = {w(rng), w(rng)};
    const auto want = oracle_plan(req, s);
    try {
      const auto got = plan_capacity(req, s);
      bad += !(want && got == *want && satisfies(req, s, got));
    } catch (const Infeasible&) {
      bad += want.has_value();
    }
  }
  return bad;
}

// Every placement keeps node bookkeeping equal to the sum of deployed specs,
// never exceeds capacity, and fails only when no node has room.
inline int check_scheduler_conservation(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nodes(1, 7);
  std::uniform_int_distribution<int> count(1, 80);
  std::uniform_int_distribution<int> cores(1, 12);
  std::uniform_int_distribution<int> mem(2, 16);
  std::bernoulli_distribution coin(0.5);
  int bad = 0;
  for (int t = 0; t < cases; ++t) {
    ScheduleConfig cfg;
    cfg.policy = coin(rng) ? SchedulingPolicy::kContentionAware : SchedulingPolicy::kLeastRequested;
    Scheduler sched(make_nodes(nodes(rng), {48, 96}), cfg);
    ResourceSpec placed{0, 0};
    bool ok = true;
    const int n = count(rng);
    for (int i = 0; i < n && ok; ++i) {
      const DeployedWorkload w{i, {cores(rng), mem(rng)}, random_profile(rng)};
      const bool room = std::any_of(sched.nodes().begin(), sched.nodes().end(),
                                    [&](const NodeState& s) { return s.fits(w.spec); });
      try {
        const auto p = sched.place(w);
        ok &= room && sched.nodes()[static_cast<std::size_t>(p.node_id)].deployed.back() == w;
        placed.cores += w.spec.cores;
        placed.memory_gb += w.spec.memory_gb;
      } catch (const CapacityExhausted&) {
        ok &= !room;
      }
      ResourceSpec used{0, 0};
      for (const auto& s : sched.nodes()) {
        ok &= s.consistent() && s.used.cores <= s.capacity.cores && s.used.memory_gb <= s.capacity.memory_gb;
        used.cores += s.used.cores;
        used.memory_gb += s.used.memory_gb;
      }
      ok &= used == placed;
    }
    bad += !ok;
  }
  return bad;
}

inline std::vector<PlacedWorkload> random_placement(std::mt19937_64& rng, const ClusterSpec& c, int count) {
  std::uniform_int_distribution<int> node(0, c.nodes - 1);
  std::vector<PlacedWorkload> out;
  for (int i = 0; i < count; ++i) out.push_back({i, node(rng), {2, 4}, random_profile(rng)});
  return out;
}

// Slowdowns lie in (0, 1]; raising a co-runner's pressure never speeds up a
// neighbour, removing a co-runner never slows one down, and other nodes are
// unaffected.
inline int check_simulator_monotonicity(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ClusterSpec c;
  c.nodes = 3;
  std::uniform_int_distribution<int> count(2, 20);
  std::uniform_int_distribution<std::size_t> res(0, kNumSharedResources - 1);
  std::uniform_int_distribution<int> bump(1, 5);
  int bad = 0;
  for (int t = 0; t < cases; ++t) {
    auto placed = random_placement(rng, c, count(rng));
    const auto before = simulate_colocated(placed, c);
    std::uniform_int_distribution<std::size_t> pick(0, placed.size() - 1);
    const std::size_t j = pick(rng);
    bool ok = true;
    for (const auto& w : before.workloads) ok &= w.sd > 0.0 && w.sd <= 1.0;

    auto louder = placed;
    auto& lv = louder[j].profile.levels[res(rng)];
    lv.pressure = std::min(20, lv.pressure + bump(rng));
    const auto up = simulate_colocated(louder, c);
    for (std::size_t i = 0; i < placed.size(); ++i) {
      if (i == j) continue;
      if (placed[i].node_id == placed[j].node_id) {
        ok &= up.workloads[i].sd <= before.workloads[i].sd;
      } else {
        ok &= up.workloads[i].sd == before.workloads[i].sd;
      }
    }

    auto fewer = placed;
    fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(j));
    const auto down = simulate_colocated(fewer, c);
    for (std::size_t i = 0, k = 0; i < placed.size(); ++i) {
      if (i == j) continue;
      ok &= down.workloads[k].sd >= before.workloads[i].sd;
      ++k;
    }
    bad += !ok;
  }
  return bad;
}

// A heavier footprint never estimates to a lower pressure level.
inline int check_estimator_monotonicity(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  NodeModel node;
  const auto est = EstimatorConfig::defaults(node);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad = 0;
  for (int t = 0; t < cases; ++t) {
    ResourceFootprint f;
    f.membw_gbps = u(rng) * 80.0;
    f.disk_iops = u(rng) * 15000.0;
    f.network_gbps = u(rng) * 20.0;
    f.membw_tolerance = f.disk_tolerance = f.network_tolerance = 20.0;
    auto g = f;
    const double s = 1.0 + u(rng);
    g.membw_gbps = std::min(f.membw_gbps * s, node.phy_mbw_gbps);
    g.disk_iops = std::min(f.disk_iops * s, node.disk_iops_ceiling());
    g.network_gbps = std::min(f.network_gbps * s, node.phy_nbw_gbps);
    SimulatedProbe pf(f, node);
    SimulatedProbe pg(g, node);
    const auto a = build_profile(pf, est);
    const auto b = build_profile(pg, est);
    bool ok = true;
    for (auto r : {SharedResource::kMemoryBandwidth, SharedResource::kDisk, SharedResource::kNetwork})
      ok &= b[r].pressure >= a[r].pressure;
    bad += !ok;
  }
  return bad;
}

}  // namespace rightsize::testing
