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

#include "rightsize/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rightsize/common.hpp"
#include "rightsize/kernels.hpp"

namespace rightsize {

namespace {

double sq_distance(const double* a, const double* b, std::size_t dim) {
  double d = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double diff = a[j] - b[j];
    d += diff * diff;
  }
  return d;
}

std::vector<std::size_t> seed_plus_plus(std::span<const double> points, std::size_t n, std::size_t dim,
                                        std::size_t k, std::mt19937_64& rng) {
  std::vector<std::size_t> chosen;
  std::vector<bool> taken(n, false);
  chosen.push_back(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  taken[chosen.back()] = true;

  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (chosen.size() < k) {
    const double* last = points.data() + chosen.back() * dim;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], sq_distance(points.data() + i * dim, last, dim));
      total += d2[i];
    }
    std::size_t next = n;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] == 0.0) continue;
        acc += d2[i];
        next = i;
        if (acc > target) break;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (!taken[i]) {
          next = i;
          break;
        }
      }
    }
    chosen.push_back(next);
    taken[next] = true;
  }
  return chosen;
}

}  // namespace

KMeansResult kmeans(std::span<const double> points, std::size_t dim, std::size_t k, std::uint64_t rng_seed,
                    const KMeansOptions& options) {
  require(dim > 0 && points.size() % dim == 0, "kmeans: points must be row-major n x dim");
  const std::size_t n = points.size() / dim;
  require(k >= 1, "kmeans: k must be at least 1");
  require(k <= n, "kmeans: k exceeds the number of points");
  for (double v : points) require(std::isfinite(v), "kmeans: non-finite point");

  std::mt19937_64 rng(rng_seed);
  KMeansResult res;
  res.k = k;
  res.dim = dim;
  res.centroids.resize(k * dim);
  const auto seeds = seed_plus_plus(points, n, dim, k, rng);
  for (std::size_t c = 0; c < k; ++c) {
    std::copy_n(points.data() + seeds[c] * dim, dim, res.centroids.data() + c * dim);
  }

  res.labels.assign(n, -1);
  std::vector<int> labels(n);
  std::vector<double> d2(n);
  std::vector<double> sums(k * dim);
  std::vector<std::size_t> counts(k);
  for (int it = 0; it < options.max_iterations; ++it) {
    if (options.use_parallel_kernel) {
      kernels::parallel::assign_nearest(points, res.centroids, dim, labels, d2);
    } else {
      kernels::serial::assign_nearest(points, res.centroids, dim, labels, d2);
    }
    double cost = 0.0;
    for (double d : d2) cost += d;
    res.cost_history.push_back(cost);
    res.iterations = it + 1;
    if (labels == res.labels) {
      res.converged = true;
      break;
    }
    res.labels = labels;

    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(labels[i]);
      ++counts[c];
      for (std::size_t j = 0; j < dim; ++j) sums[c * dim + j] += points[i * dim + j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        res.centroids[c * dim + j] = sums[c * dim + j] / static_cast<double>(counts[c]);
      }
    }
  }
  return res;
}

double kmeans_cost(std::span<const double> points, std::size_t dim, std::span<const int> labels,
                   std::span<const double> centroids) {
  double cost = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    cost += sq_distance(points.data() + i * dim, centroids.data() + static_cast<std::size_t>(labels[i]) * dim, dim);
  }
  return cost;
}

}  // namespace rightsize
