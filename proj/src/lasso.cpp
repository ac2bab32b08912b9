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

#include "rightsize/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rightsize/common.hpp"

namespace rightsize {

namespace {

struct Standardized {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd x_mean, x_sd;
  double y_mean = 0.0, y_sd = 0.0;
};

// Population statistics; zero-variance columns are left as all zeros.
Standardized standardize(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const double n = static_cast<double>(x.rows());
  Standardized s;
  s.x_mean = x.colwise().mean();
  s.x = x.rowwise() - s.x_mean.transpose();
  s.x_sd.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double sd = std::sqrt(s.x.col(j).squaredNorm() / n);
    s.x_sd(j) = sd;
    if (sd > 0.0) {
      s.x.col(j) /= sd;
    } else {
      s.x.col(j).setZero();
    }
  }
  s.y_mean = y.mean();
  s.y = y.array() - s.y_mean;
  s.y_sd = std::sqrt(s.y.squaredNorm() / n);
  if (s.y_sd > 0.0) {
    s.y /= s.y_sd;
  } else {
    s.y.setZero();
  }
  return s;
}

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

Eigen::VectorXd coordinate_descent(const Eigen::MatrixXd& xs, const Eigen::VectorXd& ys, double lambda,
                                   const LassoOptions& options) {
  const Eigen::Index p = xs.cols();
  const double n = static_cast<double>(xs.rows());
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd residual = ys;
  std::vector<double> col_sq(static_cast<std::size_t>(p));
  for (Eigen::Index j = 0; j < p; ++j) col_sq[static_cast<std::size_t>(j)] = xs.col(j).squaredNorm() / n;

  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    double max_delta = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double cj = col_sq[static_cast<std::size_t>(j)];
      if (cj == 0.0) continue;
      const double rho = xs.col(j).dot(residual) / n + cj * beta(j);
      const double updated = soft_threshold(rho, lambda) / cj;
      const double delta = updated - beta(j);
      if (delta != 0.0) {
        residual.noalias() -= delta * xs.col(j);
        beta(j) = updated;
        max_delta = std::max(max_delta, std::abs(delta));
      }
    }
    if (max_delta <= options.tolerance * std::max(1.0, beta.cwiseAbs().maxCoeff())) break;
  }
  return beta;
}

void check_samples(std::span<const PerformanceSample> samples) {
  require(samples.size() >= 2, "feature selection needs at least 2 samples");
  for (const auto& s : samples) {
    require(s.indexes.all_finite() && std::isfinite(s.performance), "non-finite sample");
    require(s.performance > 0.0, "performance must be positive");
  }
}

void to_matrix(std::span<const PerformanceSample> samples, std::span<const std::size_t> rows, Eigen::MatrixXd& x,
               Eigen::VectorXd& y) {
  x.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(kNumIndexes));
  y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& s = samples[rows[i]];
    for (std::size_t j = 0; j < kNumIndexes; ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s.indexes.values[j];
    }
    y(static_cast<Eigen::Index>(i)) = s.performance;
  }
}

}  // namespace

Eigen::VectorXd lasso_standardized(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                                   const LassoOptions& options) {
  require(x.rows() >= 2 && x.rows() == y.rows(), "lasso: need >= 2 rows and matching response");
  require(lambda >= 0.0 && std::isfinite(lambda), "lasso: lambda must be non-negative");
  require(x.allFinite() && y.allFinite(), "lasso: non-finite input");
  const auto s = standardize(x, y);
  return coordinate_descent(s.x, s.y, lambda, options);
}

double lasso_lambda_max(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const auto s = standardize(x, y);
  return (s.x.transpose() * s.y).cwiseAbs().maxCoeff() / static_cast<double>(x.rows());
}

FeatureSelection select_features(std::span<const PerformanceSample> samples, double lambda,
                                 const LassoOptions& options) {
  check_samples(samples);
  std::vector<std::size_t> rows(samples.size());
  std::iota(rows.begin(), rows.end(), 0);
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  to_matrix(samples, rows, x, y);
  const Eigen::VectorXd beta = lasso_standardized(x, y, lambda, options);

  FeatureSelection out;
  out.lambda = lambda;
  for (std::size_t j = 0; j < kNumIndexes; ++j) {
    out.weights[j] = beta(static_cast<Eigen::Index>(j));
    if (std::abs(out.weights[j]) > kSelectionThreshold) out.selected.push_back(j);
  }
  return out;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid(16);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = std::pow(10.0, -4.0 + 5.0 * i / 15.0);
  return grid;
}

double cross_validate_lambda(std::span<const PerformanceSample> samples, std::span<const double> grid,
                             int folds, std::uint64_t seed, const LassoOptions& options) {
  check_samples(samples);
  require(!grid.empty(), "lambda grid must be non-empty");
  require(folds >= 2, "need at least 2 folds");
  const std::size_t n = samples.size();
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(folds), n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> mse(grid.size(), 0.0);
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < n; ++i) (i % k == f ? test : train).push_back(order[i]);
    if (train.size() < 2 || test.empty()) continue;
    Eigen::MatrixXd xtr, xte;
    Eigen::VectorXd ytr, yte;
    to_matrix(samples, train, xtr, ytr);
    to_matrix(samples, test, xte, yte);
    const auto s = standardize(xtr, ytr);
    // Held-out rows in the training fold's standardized coordinates.
    Eigen::MatrixXd zte = xte.rowwise() - s.x_mean.transpose();
    for (Eigen::Index j = 0; j < zte.cols(); ++j) {
      if (s.x_sd(j) > 0.0) {
        zte.col(j) /= s.x_sd(j);
      } else {
        zte.col(j).setZero();
      }
    }
    const double ysd = s.y_sd > 0.0 ? s.y_sd : 1.0;
    const Eigen::VectorXd yz = (yte.array() - s.y_mean) / ysd;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const Eigen::VectorXd beta = coordinate_descent(s.x, s.y, grid[g], options);
      mse[g] += (yz - zte * beta).squaredNorm() / static_cast<double>(test.size());
    }
  }
  std::size_t best = 0;
  for (std::size_t g = 1; g < grid.size(); ++g) {
    if (mse[g] < mse[best] || (mse[g] == mse[best] && grid[g] > grid[best])) best = g;
  }
  return grid[best];
}

FeatureSelection select_features_cv(std::span<const PerformanceSample> samples, std::uint64_t seed, int folds) {
  const auto grid = default_lambda_grid();
  return select_features(samples, cross_validate_lambda(samples, grid, folds, seed), {});
}

}  // namespace rightsize
