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
#include <cmath>
#include <set>

#include "doctest.h"
#include "rightsize/common.hpp"
#include "rightsize/planner.hpp"
#include "rightsize/workload_synth.hpp"
#include "support.hpp"

using namespace rightsize;

TEST_SUITE("region") {
  TEST_CASE("default grid is enumerated cores-major") {
    const auto r = ConfigRegion::default_region();
    CHECK(r.size() == 42);
    CHECK(r.at(0) == ResourceSpec{1, 2});
    CHECK(r.at(1) == ResourceSpec{1, 4});
    CHECK(r.at(6) == ResourceSpec{2, 2});
    CHECK(r.at(41) == ResourceSpec{12, 16});
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r.require_index(r.at(i)) == i);
  }

  TEST_CASE("off-grid specs are rejected") {
    const auto r = ConfigRegion::default_region();
    CHECK_THROWS_AS(r.require_index({13, 16}), OutOfRegion);
    CHECK_THROWS_AS(r.require_index({3, 2}), OutOfRegion);
    CHECK_FALSE(r.contains({6, 10}));
  }

  TEST_CASE("level lists must be strictly increasing and non-empty") {
    CHECK_THROWS_AS(ConfigRegion({2, 2}, {2}), InvalidArgument);
    CHECK_THROWS_AS(ConfigRegion({}, {2}), InvalidArgument);
    CHECK_THROWS_AS(ConfigRegion({4, 2}, {2}), InvalidArgument);
    CHECK_NOTHROW(ConfigRegion({1}, {2}));
  }

  TEST_CASE("surface construction enforces base and positivity") {
    const ConfigRegion r({1, 2}, {2, 4});
    CHECK_NOTHROW(ScalingSurface(r, {1, 2}, {1.0, 1.2, 1.5, 2.0}));
    CHECK_THROWS_AS(ScalingSurface(r, {1, 2}, {1.1, 1.2, 1.5, 2.0}), InvalidArgument);
    CHECK_THROWS_AS(ScalingSurface(r, {1, 2}, {1.0, 0.0, 1.5, 2.0}), InvalidArgument);
    CHECK_THROWS_AS(ScalingSurface(r, {1, 2}, {1.0, 1.2, 1.5}), InvalidArgument);
    CHECK_THROWS_AS(ScalingSurface(r, {3, 2}, {1.0, 1.2, 1.5, 2.0}), OutOfRegion);
  }

  TEST_CASE("rebasing keeps ratios and pins the new base to one") {
    const auto r = ConfigRegion::default_region();
    const auto s = testing::surface_from(r, {6, 8}, [](ResourceSpec x) { return std::sqrt(x.cores) * x.memory_gb; });
    const auto t = s.rebased({1, 2});
    CHECK(t.speedup({1, 2}) == 1.0);
    CHECK(t.speedup({12, 16}) == doctest::Approx(s.speedup({12, 16}) / s.speedup({1, 2})).epsilon(1e-12));
    CHECK(s.is_monotone());
  }

  TEST_CASE("monotonicity check sees a dip") {
    const ConfigRegion r({1, 2}, {2, 4});
    CHECK(ScalingSurface(r, {1, 2}, {1.0, 1.2, 1.5, 2.0}).is_monotone());
    CHECK_FALSE(ScalingSurface(r, {1, 2}, {1.0, 1.2, 1.5, 1.4}).is_monotone());
    CHECK_FALSE(ScalingSurface(r, {1, 2}, {1.0, 0.9, 1.5, 2.0}).is_monotone());
  }
}

TEST_SUITE("synth") {
  TEST_CASE("archetype count contract") {
    const auto a = generate_archetypes(20, 7);
    REQUIRE(a.size() == 20);
    for (int i = 0; i < 20; ++i) CHECK(a[static_cast<std::size_t>(i)].archetype_id == i);
    CHECK_THROWS_AS(generate_archetypes(1, 0), InvalidArgument);
  }

  TEST_CASE("archetype generation is deterministic") {
    CHECK(generate_archetypes(20, 7) == generate_archetypes(20, 7));
    CHECK_FALSE(generate_archetypes(20, 7) == generate_archetypes(20, 8));
  }

  TEST_CASE("archetype surfaces are pairwise distinct") {
    const auto a = generate_archetypes(20, 3);
    const auto region = ConfigRegion::default_region();
    SynthOptions o;
    std::vector<ScalingSurface> surfaces;
    for (const auto& x : a) surfaces.push_back(make_workload(x, 0, 1, {6, 8}, o).ground_truth_surface);
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
      for (std::size_t j = i + 1; j < surfaces.size(); ++j) CHECK(surface_error(surfaces[i], surfaces[j]) > 0.0);
    }
  }

  TEST_CASE("same archetype without surface noise gives identical surfaces") {
    const auto a = generate_archetypes(4, 11);
    SynthOptions o;
    const auto w1 = make_workload(a[2], 0, 100, {6, 8}, o);
    const auto w2 = make_workload(a[2], 1, 200, {1, 2}, o);
    CHECK(w1.ground_truth_surface == w2.ground_truth_surface);
    CHECK(w1.ground_truth_surface.speedup(o.surface_base) == 1.0);
  }

  TEST_CASE("workloads are deterministic in archetype and seed") {
    const auto a = generate_archetypes(4, 11);
    SynthOptions o;
    o.surface_noise = 0.05;
    const auto w1 = make_workload(a[1], 5, 42, {6, 8}, o);
    const auto w2 = make_workload(a[1], 5, 42, {6, 8}, o);
    CHECK(w1.ground_truth_surface == w2.ground_truth_surface);
    CHECK(w1.ground_truth_profile == w2.ground_truth_profile);
    CHECK(w1.footprint == w2.footprint);
  }

  TEST_CASE("footprint rates are non-negative and profiles within range") {
    const auto set = generate_workload_set(20, 55, 9, {});
    for (const auto& w : set.workloads) {
      CHECK(w.footprint.llc_kmps >= 0.0);
      CHECK(w.footprint.membw_gbps >= 0.0);
      CHECK(w.footprint.disk_iops >= 0.0);
      CHECK(w.footprint.network_gbps >= 0.0);
      CHECK(w.ground_truth_profile.within(set.options.node.levels));
      CHECK(set.options.region.contains(w.origin_spec));
    }
  }

  TEST_CASE("noiseless observation is the archetype signature") {
    const auto set = generate_workload_set(5, 10, 2, {});
    const auto& w = set.workloads[3];
    const auto region = set.options.region;
    CHECK(observe_indexes(w, {4, 6}, 0.0, region) == w.archetype.signature_at({4, 6}));
    CHECK(observe_indexes(w, {4, 6}, 0.0, region).is_valid());
    CHECK_THROWS_AS(observe_indexes(w, {13, 16}, 0.0, region), OutOfRegion);
  }

  TEST_CASE("noisy observation is deterministic per seed and spec") {
    const auto set = generate_workload_set(5, 10, 2, {});
    const auto& w = set.workloads[0];
    const auto& region = set.options.region;
    CHECK(observe_indexes(w, {6, 8}, 0.05, region) == observe_indexes(w, {6, 8}, 0.05, region));
    CHECK_FALSE(observe_indexes(w, {6, 8}, 0.05, region) == observe_indexes(w, {6, 12}, 0.05, region));
    CHECK(observe_indexes(w, {6, 8}, 0.05, region).is_valid());
  }

  TEST_CASE("same-archetype observations differ by a few noise scales") {
    // Ratios of two independent log-normal draws have log-sd sigma*sqrt(2),
    // so about 97% of components should land within 3 sigma.
    const double sigma = 0.05;
    const auto set = generate_workload_set(20, 200, 5, {});
    const auto& region = set.options.region;
    std::vector<double> rel;
    for (std::size_t i = 0; i + 20 < set.workloads.size() && rel.size() < 100 * kNumIndexes; ++i) {
      const auto& a = set.workloads[i];
      const auto& b = set.workloads[i + 20];
      REQUIRE(a.archetype_id == b.archetype_id);
      const auto va = observe_indexes(a, {6, 8}, sigma, region);
      const auto vb = observe_indexes(b, {6, 8}, sigma, region);
      for (std::size_t j = 0; j < kNumIndexes; ++j) {
        if (vb.values[j] > 0.0) rel.push_back(std::abs(va.values[j] / vb.values[j] - 1.0));
      }
    }
    REQUIRE(rel.size() >= 1000);
    std::sort(rel.begin(), rel.end());
    CHECK(rel[rel.size() * 95 / 100] <= 3.0 * sigma);
    CHECK(rel.back() <= 6.0 * sigma);
  }

  TEST_CASE("workload set assigns archetypes round robin") {
    const auto set = generate_workload_set(20, 55, 0, {});
    REQUIRE(set.workloads.size() == 55);
    for (std::size_t i = 0; i < set.workloads.size(); ++i) {
      CHECK(set.workloads[i].workload_id == static_cast<int>(i));
      CHECK(set.workloads[i].archetype_id == static_cast<int>(i % 20));
    }
  }

  TEST_CASE("LLC sensitivity maps ways onto the level scale") {
    NodeModel node;
    CHECK(llc_sensitivity_level(0, node) == 0);
    CHECK(llc_sensitivity_level(11, node) == 20);
    CHECK(llc_sensitivity_level(5, node) == round_half_up(5.0 * 20 / 11));
  }
}
