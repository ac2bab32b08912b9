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

#include "rightsize/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "rightsize/common.hpp"

namespace rightsize {

namespace {

Eigen::VectorXd logistic(const Eigen::VectorXd& z) {
  return (1.0 + (-z.array()).exp()).inverse().matrix();
}

Eigen::VectorXd softmax(const Eigen::VectorXd& z) {
  const Eigen::VectorXd e = (z.array() - z.maxCoeff()).exp().matrix();
  return e / e.sum();
}

void check_training(const Eigen::MatrixXd& x, const std::vector<int>& labels, int classes) {
  require(x.rows() > 0, "classifier: empty training set");
  require(static_cast<std::size_t>(x.rows()) == labels.size(), "classifier: label count mismatch");
  require(classes >= 1, "classifier: need at least one class");
  require(x.allFinite(), "classifier: non-finite training input");
  for (int l : labels) require(l >= 0 && l < classes, "classifier: label out of range");
}

}  // namespace

MlpClassifier::MlpClassifier(Eigen::MatrixXd w1, Eigen::VectorXd b1, Eigen::MatrixXd w2, Eigen::VectorXd b2)
    : w1_(std::move(w1)), b1_(std::move(b1)), w2_(std::move(w2)), b2_(std::move(b2)) {
  require(w1_.rows() == b1_.size() && w2_.cols() == w1_.rows() && w2_.rows() == b2_.size(),
          "mlp: inconsistent layer shapes");
}

MlpClassifier MlpClassifier::train(const Eigen::MatrixXd& x, const std::vector<int>& labels, int classes,
                                   const MlpOptions& options) {
  check_training(x, labels, classes);
  require(options.hidden_units >= 1 && options.epochs >= 0 && options.learning_rate > 0.0,
          "mlp: bad training options");
  const auto d = x.cols();
  const auto h = static_cast<Eigen::Index>(options.hidden_units);
  const auto k = static_cast<Eigen::Index>(classes);

  // Glorot-uniform initialization.
  std::mt19937_64 rng(options.seed);
  auto init = [&](Eigen::Index rows, Eigen::Index cols) {
    const double a = std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::uniform_real_distribution<double> u(-a, a);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = u(rng);
    return m;
  };
  Eigen::MatrixXd w1 = init(h, d);
  Eigen::VectorXd b1 = Eigen::VectorXd::Zero(h);
  Eigen::MatrixXd w2 = init(k, h);
  Eigen::VectorXd b2 = Eigen::VectorXd::Zero(k);

  std::vector<std::size_t> order(static_cast<std::size_t>(x.rows()));
  std::iota(order.begin(), order.end(), 0);
  const double lr = options.learning_rate;
  Eigen::VectorXd hidden(h), probs(k), grad_out(k), grad_hidden(h);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t idx : order) {
      const Eigen::VectorXd xi = x.row(static_cast<Eigen::Index>(idx)).transpose();
      hidden = logistic(w1 * xi + b1);
      probs = softmax(w2 * hidden + b2);
      grad_out = probs;
      grad_out(labels[idx]) -= 1.0;
      grad_hidden = (w2.transpose() * grad_out).cwiseProduct(hidden.cwiseProduct(
                                                                (1.0 - hidden.array()).matrix()));
      w2.noalias() -= lr * grad_out * hidden.transpose();
      b2.noalias() -= lr * grad_out;
      w1.noalias() -= lr * grad_hidden * xi.transpose();
      b1.noalias() -= lr * grad_hidden;
    }
  }
  return MlpClassifier(std::move(w1), std::move(b1), std::move(w2), std::move(b2));
}

Eigen::VectorXd MlpClassifier::probabilities(const Eigen::VectorXd& x) const {
  require(x.size() == w1_.cols(), "mlp: input dimension mismatch");
  require(x.allFinite(), "mlp: non-finite input");
  return softmax(w2_ * logistic(w1_ * x + b1_) + b2_);
}

int MlpClassifier::predict(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd p = probabilities(x);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < p.size(); ++i) {
    if (p(i) > p(best)) best = i;
  }
  return static_cast<int>(best);
}

NearestCentroidClassifier::NearestCentroidClassifier(Eigen::MatrixXd centroids, std::vector<bool> present)
    : centroids_(std::move(centroids)), present_(std::move(present)) {
  require(static_cast<std::size_t>(centroids_.rows()) == present_.size(), "nearest centroid: shape mismatch");
  require(std::find(present_.begin(), present_.end(), true) != present_.end(),
          "nearest centroid: no populated class");
}

NearestCentroidClassifier NearestCentroidClassifier::train(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                                                           int classes) {
  check_training(x, labels, classes);
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(classes, x.cols());
  std::vector<int> counts(static_cast<std::size_t>(classes), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    sums.row(labels[i]) += x.row(static_cast<Eigen::Index>(i));
    ++counts[static_cast<std::size_t>(labels[i])];
  }
  std::vector<bool> present(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c) {
    present[static_cast<std::size_t>(c)] = counts[static_cast<std::size_t>(c)] > 0;
    if (present[static_cast<std::size_t>(c)]) sums.row(c) /= counts[static_cast<std::size_t>(c)];
  }
  return NearestCentroidClassifier(std::move(sums), std::move(present));
}

int NearestCentroidClassifier::predict(const Eigen::VectorXd& x) const {
  require(x.size() == centroids_.cols(), "nearest centroid: input dimension mismatch");
  require(x.allFinite(), "nearest centroid: non-finite input");
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids_.rows(); ++c) {
    if (!present_[static_cast<std::size_t>(c)]) continue;
    const double d = (centroids_.row(c).transpose() - x).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace rightsize
