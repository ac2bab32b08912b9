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

// Data-parallel inner loops.
//
// Each kernel exists twice: `serial::` is the plain reference loop and
// `parallel::` the OpenMP version. Both evaluate every element with the same
// arithmetic in the same order, so their outputs are bitwise identical and
// results never depend on the thread count. Reductions over elements are left
// to the caller and always done serially.

#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "rightsize/interference.hpp"

namespace rightsize::kernels {

/// Per-workload inputs of the co-location slowdown model.
struct ColocatedWorkload {
  std::size_t node = 0;
  std::array<int, kNumSharedResources> pressure{};
  std::array<int, kNumSharedResources> sensitivity{};
};

/// d(P, s) = 1 / (1 + gamma * s * max(0, P - theta) / N^2)
struct InterferenceModel {
  double gamma = 0.5;
  double theta = 5.0;
  int levels = 20;
};

namespace serial {

/// Nearest centroid (squared Euclidean, lowest index wins ties) for each of
/// the row-major points. labels/sq_dist have one slot per point.
void assign_nearest(std::span<const double> points, std::span<const double> centroids, std::size_t dim,
                    std::span<int> labels, std::span<double> sq_dist);

/// Mean relative error sum|p/a - 1| / dim for each row pair.
void surface_errors(std::span<const double> predicted, std::span<const double> actual, std::size_t dim,
                    std::span<double> out);

/// Slowdown of each workload given per-node pressure sums (row-major
/// nodes x resources), excluding the workload's own pressure.
void slowdowns(std::span<const ColocatedWorkload> workloads, std::span<const double> node_pressure,
               const InterferenceModel& model, std::span<double> out);

}  // namespace serial

namespace parallel {

void assign_nearest(std::span<const double> points, std::span<const double> centroids, std::size_t dim,
                    std::span<int> labels, std::span<double> sq_dist);

void surface_errors(std::span<const double> predicted, std::span<const double> actual, std::size_t dim,
                    std::span<double> out);

void slowdowns(std::span<const ColocatedWorkload> workloads, std::span<const double> node_pressure,
               const InterferenceModel& model, std::span<double> out);

}  // namespace parallel

/// Worker threads OpenMP will use (1 when built without OpenMP).
int max_threads();

}  // namespace rightsize::kernels
