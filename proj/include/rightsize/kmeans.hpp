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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rightsize {

struct KMeansResult {
  std::size_t k = 0;
  std::size_t dim = 0;
  std::vector<double> centroids;  // row-major k x dim
  std::vector<int> labels;
  /// Sum of squared distances after each assignment step; non-increasing.
  std::vector<double> cost_history;
  int iterations = 0;
  bool converged = false;  // assignment reached a fixpoint

  double cost() const { return cost_history.empty() ? 0.0 : cost_history.back(); }
};

struct KMeansOptions {
  int max_iterations = 300;
  bool use_parallel_kernel = true;
};

/// Lloyd's algorithm with k-means++ seeding on row-major points.
///
/// Seeding draws the first center uniformly and later ones proportionally to
/// squared distance; once every point coincides with a chosen center the
/// lowest-index unchosen point is taken instead. An empty cluster keeps its
/// previous center. Deterministic in rng_seed.
KMeansResult kmeans(std::span<const double> points, std::size_t dim, std::size_t k, std::uint64_t rng_seed,
                    const KMeansOptions& options = {});

/// Sum of squared distances from each point to the centroid of its label.
double kmeans_cost(std::span<const double> points, std::size_t dim, std::span<const int> labels,
                   std::span<const double> centroids);

}  // namespace rightsize
