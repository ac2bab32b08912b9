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


// Serial reference kernels against their OpenMP counterparts.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "rightsize/kernels.hpp"

using namespace rightsize;

namespace {

std::vector<double> uniform(std::size_t n, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

constexpr std::size_t kDim = 42;

template <bool Parallel>
void BM_AssignNearest(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t k = 20;
  const auto points = uniform(n * kDim, 0.0, 4.0, 1);
  const auto centroids = uniform(k * kDim, 0.0, 4.0, 2);
  std::vector<int> labels(n);
  std::vector<double> dist(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::assign_nearest(points, centroids, kDim, labels, dist);
    } else {
      kernels::serial::assign_nearest(points, centroids, kDim, labels, dist);
    }
    benchmark::DoNotOptimize(dist.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <bool Parallel>
void BM_SurfaceErrors(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto predicted = uniform(n * kDim, 0.5, 4.0, 3);
  const auto actual = uniform(n * kDim, 0.5, 4.0, 4);
  std::vector<double> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::surface_errors(predicted, actual, kDim, out);
    } else {
      kernels::serial::surface_errors(predicted, actual, kDim, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <bool Parallel>
void BM_Slowdowns(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t nodes = 64;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> level(0, 20);
  std::uniform_int_distribution<std::size_t> node(0, nodes - 1);
  std::vector<kernels::ColocatedWorkload> work(n);
  std::vector<double> pressure(nodes * kNumSharedResources, 0.0);
  for (auto& w : work) {
    w.node = node(rng);
    for (std::size_t r = 0; r < kNumSharedResources; ++r) {
      w.pressure[r] = level(rng);
      w.sensitivity[r] = level(rng);
      pressure[w.node * kNumSharedResources + r] += w.pressure[r];
    }
  }
  const kernels::InterferenceModel model;
  std::vector<double> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::slowdowns(work, pressure, model, out);
    } else {
      kernels::serial::slowdowns(work, pressure, model, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

}  // namespace

BENCHMARK(BM_AssignNearest<false>)->Name("assign_nearest/serial")->Range(1 << 8, 1 << 16);
BENCHMARK(BM_AssignNearest<true>)->Name("assign_nearest/parallel")->Range(1 << 8, 1 << 16);
BENCHMARK(BM_SurfaceErrors<false>)->Name("surface_errors/serial")->Range(1 << 8, 1 << 16);
BENCHMARK(BM_SurfaceErrors<true>)->Name("surface_errors/parallel")->Range(1 << 8, 1 << 16);
BENCHMARK(BM_Slowdowns<false>)->Name("slowdowns/serial")->Range(1 << 8, 1 << 18);
BENCHMARK(BM_Slowdowns<true>)->Name("slowdowns/parallel")->Range(1 << 8, 1 << 18);

BENCHMARK_MAIN();
