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


#include <algorithm>
#include <random>

#include "doctest.h"
#include "rightsize/common.hpp"
#include "rightsize/simulator.hpp"
#include "support.hpp"

using namespace rightsize;

namespace {

PlacedWorkload placed(int id, int node, InterferenceProfile p, ResourceSpec spec = {2, 4}) {
  return {id, node, spec, p};
}

}  // namespace

TEST_SUITE("simulator") {
  TEST_CASE("metric examples") {
    const std::vector<double> two = {1.0, 0.5};
    const auto m = compute_metrics(two);
    CHECK(m.p_sys == 1.5);
    CHECK(m.unfairness == 0.5);
    const std::vector<double> ones(5, 1.0);
    CHECK(compute_metrics(ones).p_sys == 5.0);
    CHECK(compute_metrics(ones).unfairness == 0.0);
  }

  TEST_CASE("metrics are permutation invariant") {
    std::vector<double> v = {0.9, 0.3, 0.7, 1.0, 0.55};
    const auto m = compute_metrics(v);
    std::sort(v.begin(), v.end());
    do {
      const auto n = compute_metrics(v);
      CHECK(n.unfairness == m.unfairness);
      CHECK(n.p_sys == doctest::Approx(m.p_sys).epsilon(1e-15));
    } while (std::next_permutation(v.begin(), v.end()));
  }

  TEST_CASE("metric preconditions") {
    CHECK_THROWS_AS(compute_metrics(std::vector<double>{}), InvalidArgument);
    CHECK_THROWS_AS(compute_metrics(std::vector<double>{1.0, 0.0}), InvalidArgument);
  }

  TEST_CASE("solo workload runs at full speed") {
    ClusterSpec c;
    const std::vector<PlacedWorkload> w = {placed(1, 0, testing::uniform_profile(20, 20))};
    CHECK(simulate_colocated(w, c).workloads.front().sd == 1.0);
  }

  TEST_CASE("insensitive workload is never slowed") {
    ClusterSpec c;
    std::vector<PlacedWorkload> w = {placed(1, 0, testing::uniform_profile(5, 0))};
    for (int i = 0; i < 6; ++i) w.push_back(placed(10 + i, 0, testing::uniform_profile(20, 3)));
    const auto r = simulate_colocated(w, c);
    CHECK(r.workloads.front().sd == 1.0);
    CHECK(r.workloads.back().sd < 1.0);
  }

  TEST_CASE("slowdown substitution example") {
    ClusterSpec c;
    InterferenceProfile victim, noisy;
    victim[SharedResource::kDisk] = {0, 10};
    noisy[SharedResource::kDisk] = {15, 0};
    const std::vector<PlacedWorkload> w = {placed(1, 2, victim), placed(2, 2, noisy)};
    const auto r = simulate_colocated(w, c);
    CHECK(r.workloads[0].sd == doctest::Approx(1.0 / 1.125).epsilon(1e-15));
    CHECK(r.workloads[1].sd == 1.0);
    CHECK(r.metrics.p_sys == r.workloads[0].sd + r.workloads[1].sd);
  }

  TEST_CASE("own pressure does not count") {
    ClusterSpec c;
    const std::vector<PlacedWorkload> w = {placed(1, 0, testing::uniform_profile(20, 20)),
                                           placed(2, 0, testing::uniform_profile(0, 0))};
    CHECK(simulate_colocated(w, c).workloads[0].sd == 1.0);
  }

  TEST_CASE("resources compose multiplicatively") {
    ClusterSpec c;
    InterferenceProfile victim = testing::uniform_profile(0, 10);
    const std::vector<PlacedWorkload> w = {placed(1, 0, victim), placed(2, 0, testing::uniform_profile(15, 0))};
    CHECK(simulate_colocated(w, c).workloads[0].sd == doctest::Approx(std::pow(1.0 / 1.125, 4)).epsilon(1e-14));
  }

  TEST_CASE("invalid placements") {
    ClusterSpec c;
    CHECK_THROWS_AS(simulate_colocated(std::vector<PlacedWorkload>{placed(1, 7, {})}, c), InvalidArgument);
    CHECK_THROWS_AS(simulate_colocated(std::vector<PlacedWorkload>{placed(1, 0, {}), placed(1, 1, {})}, c),
                    InvalidArgument);
    CHECK_THROWS_AS(simulate_colocated(std::vector<PlacedWorkload>{placed(1, 0, testing::uniform_profile(21, 0))}, c),
                    InvalidArgument);
    std::vector<PlacedWorkload> heavy;
    for (int i = 0; i < 9; ++i) heavy.push_back(placed(i, 0, {}, {12, 16}));
    CHECK_THROWS_AS(simulate_colocated(heavy, c), InvalidArgument);
  }

  TEST_CASE("concentrating pressure is less fair than spreading it") {
    ClusterSpec c;
    c.nodes = 2;
    const auto loud = testing::uniform_profile(12, 12);
    const auto calm = testing::uniform_profile(1, 12);
    std::vector<PlacedWorkload> packed, spread;
    for (int i = 0; i < 4; ++i) {
      packed.push_back(placed(i, 0, loud));
      packed.push_back(placed(10 + i, 1, calm));
      spread.push_back(placed(i, i % 2, loud));
      spread.push_back(placed(10 + i, i % 2, calm));
    }
    CHECK(simulate_colocated(packed, c).metrics.unfairness > simulate_colocated(spread, c).metrics.unfairness);
  }

  TEST_CASE("serial and parallel kernels agree exactly") {
    ClusterSpec c;
    std::mt19937_64 rng(8);
    std::vector<PlacedWorkload> w;
    for (int i = 0; i < 56; ++i) w.push_back(placed(i, i % 7, testing::random_profile(rng)));
    const auto a = simulate_colocated(w, c, false);
    const auto b = simulate_colocated(w, c, true);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(a.workloads[i].sd == b.workloads[i].sd);
    CHECK(a.metrics.p_sys == b.metrics.p_sys);
  }
}
