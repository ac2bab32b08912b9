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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rightsize/indexes.hpp"

namespace rightsize {

struct LassoOptions {
  double tolerance = 1e-6;  // on max coefficient change, relative to max(1, |beta|_inf)
  int max_sweeps = 100000;
};

/// Coordinate descent for
///   (1/2n) ||y - X b||^2 + lambda ||b||_1
/// on column-standardized X (population sd) and standardized y. Constant
/// columns, or a constant response, get zero coefficients. Returned
/// coefficients are in standardized units.
Eigen::VectorXd lasso_standardized(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                                   const LassoOptions& options = {});

/// Smallest lambda that zeroes every coefficient: max_j |corr(x_j, y)|.
double lasso_lambda_max(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

struct PerformanceSample {
  SystemIndexVector indexes;
  double performance = 0.0;  // e.g. transactions per second, > 0
};

struct FeatureSelection {
  double lambda = 0.0;
  /// Index positions with |weight| > 1e-9, ascending.
  std::vector<std::size_t> selected;
  std::array<double, kNumIndexes> weights{};

  friend bool operator==(const FeatureSelection&, const FeatureSelection&) = default;
};

inline constexpr double kSelectionThreshold = 1e-9;

/// Throws InvalidArgument for fewer than 2 samples, non-finite values or
/// non-positive performance.
FeatureSelection select_features(std::span<const PerformanceSample> samples, double lambda,
                                 const LassoOptions& options = {});

/// 16 log-spaced values from 1e-4 to 1e1.
std::vector<double> default_lambda_grid();

/// K-fold cross-validated lambda (lowest mean held-out MSE; ties go to the
/// larger lambda). Fold membership is a seeded shuffle.
double cross_validate_lambda(std::span<const PerformanceSample> samples, std::span<const double> grid,
                             int folds, std::uint64_t seed, const LassoOptions& options = {});

/// cross_validate_lambda followed by select_features on all samples.
FeatureSelection select_features_cv(std::span<const PerformanceSample> samples, std::uint64_t seed,
                                    int folds = 5);

}  // namespace rightsize
