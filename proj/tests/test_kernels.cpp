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


#include <omp.h>

#include <random>
#include <vector>

#include "doctest.h"
#include "rightsize/common.hpp"
#include "rightsize/kernels.hpp"

using namespace rightsize;
using namespace rightsize::kernels;

namespace {

std::vector<double> uniform(std::size_t n, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

struct ThreadCount {
  explicit ThreadCount(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("nearest assignment is identical serial and parallel") {
    const std::size_t dim = 42, n = 3000, k = 20;
    const auto pts = uniform(n * dim, 0.1, 3.0, 1);
    const auto ctr = uniform(k * dim, 0.1, 3.0, 2);
    std::vector<int> ls(n), lp(n);
    std::vector<double> ds(n), dp(n);
    serial::assign_nearest(pts, ctr, dim, ls, ds);
    for (int threads : {1, 2, 4}) {
      ThreadCount tc(threads);
      parallel::assign_nearest(pts, ctr, dim, lp, dp);
      CHECK(ls == lp);
      CHECK(ds == dp);
    }
  }

  TEST_CASE("nearest assignment breaks ties toward the lower centroid") {
    const std::vector<double> pts = {0.0};
    const std::vector<double> ctr = {1.0, -1.0};
    std::vector<int> l(1);
    std::vector<double> d(1);
    serial::assign_nearest(pts, ctr, 1, l, d);
    CHECK(l[0] == 0);
    CHECK(d[0] == 1.0);
  }

  TEST_CASE("surface errors are identical serial and parallel") {
    const std::size_t dim = 42, n = 2000;
    const auto p = uniform(n * dim, 0.2, 4.0, 3);
    const auto a = uniform(n * dim, 0.2, 4.0, 4);
    std::vector<double> es(n), ep(n);
    serial::surface_errors(p, a, dim, es);
    for (int threads : {1, 3}) {
      ThreadCount tc(threads);
      parallel::surface_errors(p, a, dim, ep);
      CHECK(es == ep);
    }
    double first = 0.0;
    for (std::size_t j = 0; j < dim; ++j) first += std::abs(p[j] / a[j] - 1.0);
    CHECK(es[0] == doctest::Approx(first / dim).epsilon(1e-14));
  }

  TEST_CASE("slowdowns are identical serial and parallel") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> lv(0, 20);
    const std::size_t nodes = 50;
    std::vector<ColocatedWorkload> w(4000);
    std::vector<double> pressure(nodes * kNumSharedResources, 0.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i].node = i % nodes;
      for (std::size_t r = 0; r < kNumSharedResources; ++r) {
        w[i].pressure[r] = lv(rng);
        w[i].sensitivity[r] = lv(rng);
        pressure[w[i].node * kNumSharedResources + r] += w[i].pressure[r];
      }
    }
    std::vector<double> ss(w.size()), sp(w.size());
    serial::slowdowns(w, pressure, {}, ss);
    for (int threads : {1, 4}) {
      ThreadCount tc(threads);
      parallel::slowdowns(w, pressure, {}, sp);
      CHECK(ss == sp);
    }
    for (double s : ss) {
      CHECK(s > 0.0);
      CHECK(s <= 1.0);
    }
  }

  TEST_CASE("shape checks") {
    std::vector<double> out(1);
    CHECK_THROWS_AS(serial::surface_errors(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}, 1, out),
                    InvalidArgument);
    std::vector<ColocatedWorkload> w(1);
    w[0].node = 3;
    CHECK_THROWS_AS(parallel::slowdowns(w, std::vector<double>(4, 0.0), {}, out), InvalidArgument);
  }
}
