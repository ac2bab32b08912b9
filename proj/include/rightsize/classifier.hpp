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

// Small dense classifiers used to map counter vectors to surface clusters.
// Inputs are expected to be standardized already.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace rightsize {

struct MlpOptions {
  int hidden_units = 32;
  double learning_rate = 0.01;
  int epochs = 500;
  std::uint64_t seed = 0;
};

/// One logistic hidden layer, softmax output, trained by per-sample
/// stochastic gradient descent on cross-entropy with a fixed step.
class MlpClassifier {
 public:
  MlpClassifier() = default;
  MlpClassifier(Eigen::MatrixXd w1, Eigen::VectorXd b1, Eigen::MatrixXd w2, Eigen::VectorXd b2);

  /// x is n x d; labels in [0, classes).
  static MlpClassifier train(const Eigen::MatrixXd& x, const std::vector<int>& labels, int classes,
                             const MlpOptions& options);

  Eigen::VectorXd probabilities(const Eigen::VectorXd& x) const;
  /// argmax of probabilities; lowest class wins ties.
  int predict(const Eigen::VectorXd& x) const;

  int inputs() const { return static_cast<int>(w1_.cols()); }
  int classes() const { return static_cast<int>(w2_.rows()); }

  const Eigen::MatrixXd& w1() const { return w1_; }
  const Eigen::VectorXd& b1() const { return b1_; }
  const Eigen::MatrixXd& w2() const { return w2_; }
  const Eigen::VectorXd& b2() const { return b2_; }

 private:
  Eigen::MatrixXd w1_;  // hidden x inputs
  Eigen::VectorXd b1_;
  Eigen::MatrixXd w2_;  // classes x hidden
  Eigen::VectorXd b2_;
};

/// Predicts the class whose training mean is closest (Euclidean). Classes
/// with no training rows are never predicted.
class NearestCentroidClassifier {
 public:
  NearestCentroidClassifier() = default;
  NearestCentroidClassifier(Eigen::MatrixXd centroids, std::vector<bool> present);

  static NearestCentroidClassifier train(const Eigen::MatrixXd& x, const std::vector<int>& labels, int classes);

  int predict(const Eigen::VectorXd& x) const;

  const Eigen::MatrixXd& centroids() const { return centroids_; }
  const std::vector<bool>& present() const { return present_; }
  int classes() const { return static_cast<int>(centroids_.rows()); }

 private:
  Eigen::MatrixXd centroids_;  // classes x inputs
  std::vector<bool> present_;
};

}  // namespace rightsize
