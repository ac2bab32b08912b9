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


#include "doctest.h"
#include "invariants.hpp"

using namespace rightsize;
using namespace rightsize::testing;

TEST_SUITE("properties") {
  TEST_CASE("contention risk matches a brute-force product") { CHECK(check_risk_oracle(1000, 1) == 0); }
  TEST_CASE("node score matches a brute-force recomputation") { CHECK(check_score_oracle(1000, 2) == 0); }
  TEST_CASE("surface error matches the mean relative deviation") { CHECK(check_surface_error_oracle(1000, 3) == 0); }
  TEST_CASE("metrics match sum and normalized spread") { CHECK(check_metrics_oracle(1000, 4) == 0); }
  TEST_CASE("generated surfaces are monotone") { CHECK(check_surface_monotonicity(1000, 5) == 0); }
  TEST_CASE("planner agrees with exhaustive search") { CHECK(check_planner_oracle(1000, 6) == 0); }
  TEST_CASE("scheduler conserves capacity") { CHECK(check_scheduler_conservation(1000, 7) == 0); }
  TEST_CASE("simulator slowdown is monotone in contention") { CHECK(check_simulator_monotonicity(1000, 8) == 0); }
  TEST_CASE("estimated pressure is monotone in footprint") { CHECK(check_estimator_monotonicity(200, 9) == 0); }

  TEST_CASE("scale-up cost is monotone in target") {
    std::mt19937_64 rng(10);
    const auto region = ConfigRegion::default_region();
    std::uniform_real_distribution<double> ex(0.1, 1.0);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
      const double a = ex(rng);
      const double b = ex(rng);
      const auto s = surface_from(region, {1, 2}, [&](ResourceSpec x) { return std::pow(x.cores, a) * std::pow(x.memory_gb, b); });
      PlanningRequest lo;
      lo.current_spec = {1, 2};
      lo.target_speedup = 1.0 + 3.0 * ex(rng);
      auto hi = lo;
      hi.target_speedup = lo.target_speedup * (1.0 + ex(rng));
      try {
        const auto h = plan_capacity(hi, s);
        const auto l = plan_capacity(lo, s);
        bad += lo.cost_weights.cost(l) > lo.cost_weights.cost(h);
      } catch (const Infeasible&) {
      }
    }
    CHECK(bad == 0);
  }
}
