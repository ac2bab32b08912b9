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

#include "rightsize/kernels.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rightsize/common.hpp"

namespace rightsize::kernels {

namespace {

inline void nearest_one(const double* point, std::span<const double> centroids, std::size_t dim, int& label,
                        double& best) {
  const std::size_t k = centroids.size() / dim;
  best = std::numeric_limits<double>::infinity();
  label = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const double* ctr = centroids.data() + c * dim;
    double d = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double diff = point[j] - ctr[j];
      d += diff * diff;
    }
    if (d < best) {
      best = d;
      label = static_cast<int>(c);
    }
  }
}

inline double surface_error_one(const double* p, const double* a, std::size_t dim) {
  double sum = 0.0;
  for (std::size_t j = 0; j < dim; ++j) sum += std::abs(p[j] / a[j] - 1.0);
  return sum / static_cast<double>(dim);
}

inline double slowdown_one(const ColocatedWorkload& w, std::span<const double> node_pressure,
                           const InterferenceModel& m) {
  const double n2 = static_cast<double>(m.levels) * m.levels;
  double sd = 1.0;
  for (std::size_t r = 0; r < kNumSharedResources; ++r) {
    const double others = node_pressure[w.node * kNumSharedResources + r] - w.pressure[r];
    const double excess = others > m.theta ? others - m.theta : 0.0;
    sd *= 1.0 / (1.0 + m.gamma * w.sensitivity[r] * excess / n2);
  }
  return sd;
}

void check_assign(std::span<const double> points, std::span<const double> centroids, std::size_t dim,
                  std::span<int> labels, std::span<double> sq_dist) {
  require(dim > 0 && points.size() % dim == 0 && centroids.size() % dim == 0 && !centroids.empty(),
          "assign_nearest: bad shapes");
  require(labels.size() == points.size() / dim && sq_dist.size() == labels.size(),
          "assign_nearest: output size mismatch");
}

void check_errors(std::span<const double> predicted, std::span<const double> actual, std::size_t dim,
                  std::span<double> out) {
  require(dim > 0 && predicted.size() == actual.size() && predicted.size() % dim == 0 &&
              out.size() == predicted.size() / dim,
          "surface_errors: bad shapes");
}

void check_slowdowns(std::span<const ColocatedWorkload> workloads, std::span<const double> node_pressure,
                     std::span<double> out) {
  require(out.size() == workloads.size() && node_pressure.size() % kNumSharedResources == 0,
          "slowdowns: bad shapes");
  const std::size_t nodes = node_pressure.size() / kNumSharedResources;
  for (const auto& w : workloads) require(w.node < nodes, "slowdowns: node index out of range");
}

// Below this many elements the fork/join overhead dominates.
constexpr std::ptrdiff_t kParallelThreshold = 256;

}  // namespace

namespace serial {

void assign_nearest(std::span<const double> points, std::span<const double> centroids, std::size_t dim,
                    std::span<int> labels, std::span<double> sq_dist) {
  check_assign(points, centroids, dim, labels, sq_dist);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    nearest_one(points.data() + i * dim, centroids, dim, labels[i], sq_dist[i]);
  }
}

void surface_errors(std::span<const double> predicted, std::span<const double> actual, std::size_t dim,
                    std::span<double> out) {
  check_errors(predicted, actual, dim, out);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = surface_error_one(predicted.data() + i * dim, actual.data() + i * dim, dim);
  }
}

void slowdowns(std::span<const ColocatedWorkload> workloads, std::span<const double> node_pressure,
               const InterferenceModel& model, std::span<double> out) {
  check_slowdowns(workloads, node_pressure, out);
  for (std::size_t i = 0; i < workloads.size(); ++i) out[i] = slowdown_one(workloads[i], node_pressure, model);
}

}  // namespace serial

namespace parallel {

void assign_nearest(std::span<const double> points, std::span<const double> centroids, std::size_t dim,
                    std::span<int> labels, std::span<double> sq_dist) {
  check_assign(points, centroids, dim, labels, sq_dist);
  const auto n = static_cast<std::ptrdiff_t>(labels.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    nearest_one(points.data() + u * dim, centroids, dim, labels[u], sq_dist[u]);
  }
}

void surface_errors(std::span<const double> predicted, std::span<const double> actual, std::size_t dim,
                    std::span<double> out) {
  check_errors(predicted, actual, dim, out);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = surface_error_one(predicted.data() + u * dim, actual.data() + u * dim, dim);
  }
}

void slowdowns(std::span<const ColocatedWorkload> workloads, std::span<const double> node_pressure,
               const InterferenceModel& model, std::span<double> out) {
  check_slowdowns(workloads, node_pressure, out);
  const auto n = static_cast<std::ptrdiff_t>(workloads.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = slowdown_one(workloads[u], node_pressure, model);
  }
}

}  // namespace parallel

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace rightsize::kernels
