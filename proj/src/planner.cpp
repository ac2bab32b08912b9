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

#include "rightsize/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rightsize/common.hpp"
#include "rightsize/kernels.hpp"
#include "rightsize/kmeans.hpp"

namespace rightsize {

SurfaceClustering cluster_surfaces(std::span<const ScalingSurface> surfaces, std::size_t k, std::uint64_t rng_seed,
                                   std::span<const int> workload_ids) {
  require(!surfaces.empty(), "cluster_surfaces: no surfaces");
  require(k >= 1 && k <= surfaces.size(), "cluster_surfaces: k must be in [1, number of surfaces]");
  require(workload_ids.empty() || workload_ids.size() == surfaces.size(), "cluster_surfaces: id count mismatch");
  const auto& region = surfaces.front().region();
  const auto base = surfaces.front().base_spec();
  for (const auto& s : surfaces) {
    require(s.region() == region && s.base_spec() == base, "cluster_surfaces: surfaces must share region and base");
  }
  const std::size_t dim = region.size();
  std::vector<double> points;
  points.reserve(surfaces.size() * dim);
  for (const auto& s : surfaces) points.insert(points.end(), s.values().begin(), s.values().end());

  const auto km = kmeans(points, dim, k, rng_seed);
  SurfaceClustering out;
  out.k = k;
  out.cost = km.cost();
  out.iterations = km.iterations;
  for (std::size_t c = 0; c < k; ++c) {
    const auto first = km.centroids.begin() + static_cast<std::ptrdiff_t>(c * dim);
    out.centroids.emplace_back(region, base, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(dim)));
  }
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    const int id = workload_ids.empty() ? static_cast<int>(i) : workload_ids[i];
    out.assignments[id] = km.labels[i];
  }
  return out;
}

SystemIndexVector planner_features(const SystemIndexVector& raw) {
  SystemIndexVector out;
  for (std::size_t j = 0; j < kNumIndexes; ++j) out.values[j] = std::log1p(std::max(0.0, raw.values[j]));
  return out;
}

SurfaceClassifier::SurfaceClassifier(Parts parts) : p_(std::move(parts)) {
  require(p_.k >= 1, "classifier: k must be positive");
  require(!p_.features.empty(), "classifier: no features");
  require(p_.mean.size() == p_.features.size() && p_.scale.size() == p_.features.size(),
          "classifier: normalization size mismatch");
  for (auto f : p_.features) require(f < kNumIndexes, "classifier: feature index out of range");
}

int SurfaceClassifier::predict(const SystemIndexVector& raw_indexes) const {
  require(raw_indexes.all_finite(), "classifier: non-finite index vector");
  if (p_.constant_label) return *p_.constant_label;
  const auto f = planner_features(raw_indexes);
  Eigen::VectorXd x(static_cast<Eigen::Index>(p_.features.size()));
  for (std::size_t j = 0; j < p_.features.size(); ++j) {
    x(static_cast<Eigen::Index>(j)) = (f.values[p_.features[j]] - p_.mean[j]) / p_.scale[j];
  }
  return p_.kind == ClassifierKind::kMlp ? p_.mlp.predict(x) : p_.nearest.predict(x);
}

SurfaceClassifier train_classifier(std::span<const LabeledIndexes> training, ResourceSpec base_spec,
                                   const FeatureSelection& selection, int k, const ClassifierOptions& options) {
  require(!training.empty(), "train_classifier: empty training set");
  require(k >= 1, "train_classifier: k must be positive");
  require(!selection.selected.empty(), "train_classifier: feature selection is empty");
  for (const auto& t : training) {
    require(t.cluster >= 0 && t.cluster < k, "train_classifier: cluster id out of range");
    require(t.indexes.all_finite(), "train_classifier: non-finite index vector");
  }

  SurfaceClassifier::Parts parts;
  parts.base_spec = base_spec;
  parts.k = k;
  parts.kind = options.kind;
  parts.features = selection.selected;
  const auto n = static_cast<Eigen::Index>(training.size());
  const auto d = static_cast<Eigen::Index>(parts.features.size());
  Eigen::MatrixXd x(n, d);
  std::vector<int> labels(training.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto f = planner_features(training[static_cast<std::size_t>(i)].indexes);
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = f.values[parts.features[static_cast<std::size_t>(j)]];
    labels[static_cast<std::size_t>(i)] = training[static_cast<std::size_t>(i)].cluster;
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mean = x.col(j).mean();
    const double sd = std::sqrt((x.col(j).array() - mean).square().mean());
    const double scale = sd > 0.0 ? sd : 1.0;
    x.col(j) = (x.col(j).array() - mean) / scale;
    parts.mean.push_back(mean);
    parts.scale.push_back(scale);
  }

  if (std::all_of(labels.begin(), labels.end(), [&](int l) { return l == labels.front(); })) {
    parts.constant_label = labels.front();
  } else if (options.kind == ClassifierKind::kMlp) {
    parts.mlp = MlpClassifier::train(x, labels, k, options.mlp);
  } else {
    parts.nearest = NearestCentroidClassifier::train(x, labels, k);
  }
  return SurfaceClassifier(std::move(parts));
}

ScalingSurface predict_surface(const SurfaceClassifier& classifier, const SurfaceClustering& clustering,
                               const SystemIndexVector& indexes) {
  require(static_cast<std::size_t>(classifier.k()) == clustering.k && clustering.centroids.size() == clustering.k,
          "predict_surface: classifier and clustering disagree on k");
  const int c = classifier.predict(indexes);
  return clustering.centroids[static_cast<std::size_t>(c)];
}

double surface_error(std::span<const double> predicted, std::span<const double> actual) {
  require(!actual.empty() && predicted.size() == actual.size(), "surface_error: size mismatch");
  for (double a : actual) require(a != 0.0, "surface_error: actual speedup is zero");
  double out = 0.0;
  kernels::serial::surface_errors(predicted, actual, actual.size(), std::span<double>(&out, 1));
  return out;
}

double surface_error(const ScalingSurface& predicted, const ScalingSurface& actual) {
  require(predicted.region() == actual.region(), "surface_error: regions differ");
  require(predicted.base_spec() == actual.base_spec(), "surface_error: base specifications differ");
  return surface_error(predicted.values(), actual.values());
}

bool satisfies(const PlanningRequest& request, const ScalingSurface& surface, ResourceSpec candidate) {
  const double current = surface.speedup(request.current_spec);
  const double value = surface.speedup(candidate);
  if (request.policy == PlanningPolicy::kScaleUp) {
    return value / current >= request.target_speedup * (1.0 - kSpeedupSlack);
  }
  return value >= (1.0 - request.performance_tolerance) * current * (1.0 - kSpeedupSlack);
}

ResourceSpec plan_capacity(const PlanningRequest& request, const ScalingSurface& surface) {
  const auto& region = surface.region();
  region.require_index(request.current_spec);
  if (request.policy == PlanningPolicy::kScaleUp) {
    require(std::isfinite(request.target_speedup) && request.target_speedup >= 1.0,
            "plan_capacity: scale-up target must be >= 1");
  } else {
    require(request.performance_tolerance >= 0.0 && request.performance_tolerance <= 1.0,
            "plan_capacity: tolerance must be in [0, 1]");
  }
  std::optional<ResourceSpec> best;
  double best_cost = 0.0;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto spec = region.at(i);
    if (!satisfies(request, surface, spec)) continue;
    const double cost = request.cost_weights.cost(spec);
    // Grid order is cores-major ascending, so the first spec at a given cost
    // already has the fewest cores and then the least memory.
    if (!best || cost < best_cost) {
      best = spec;
      best_cost = cost;
    }
  }
  if (!best) {
    throw Infeasible("no specification in the region reaches the requested performance");
  }
  return *best;
}

PreparedTraining prepare_training(std::span<const Workload* const> training, ResourceSpec base,
                                  const ConfigRegion& region, const PlannerTrainingOptions& options) {
  require(!training.empty(), "prepare_training: no training workloads");
  region.require_index(base);
  PreparedTraining out{base, {}, {}, {}, {}};
  std::vector<PerformanceSample> samples;
  for (const Workload* w : training) {
    require(w->ground_truth_surface.region() == region, "prepare_training: workload region mismatch");
    out.observed.push_back(observe_indexes(*w, base, options.noise_sigma, region));
    samples.push_back({planner_features(out.observed.back()), w->throughput(base)});
    out.surfaces.push_back(w->ground_truth_surface.rebased(base));
    out.workload_ids.push_back(w->workload_id);
  }
  out.selection = options.lambda ? select_features(samples, *options.lambda)
                                 : select_features_cv(samples, mix_seed(options.seed, 11));
  return out;
}

BasePlanner fit_planner(const PreparedTraining& prepared, int k, const PlannerTrainingOptions& options) {
  require(k >= 1, "fit_planner: k must be positive");
  auto clustering =
      cluster_surfaces(prepared.surfaces, static_cast<std::size_t>(k), mix_seed(options.seed, 12), prepared.workload_ids);
  std::vector<LabeledIndexes> labeled;
  for (std::size_t i = 0; i < prepared.observed.size(); ++i) {
    labeled.push_back({prepared.observed[i], clustering.assignments.at(prepared.workload_ids[i])});
  }
  auto classifier_options = options.classifier;
  classifier_options.mlp.seed = mix_seed(options.seed, 13);
  auto classifier = train_classifier(labeled, prepared.base, prepared.selection, k, classifier_options);
  return BasePlanner{prepared.selection, std::move(clustering), std::move(classifier)};
}

BasePlanner train_base_planner(std::span<const Workload* const> training, ResourceSpec base,
                               const ConfigRegion& region, const PlannerTrainingOptions& options) {
  return fit_planner(prepare_training(training, base, region, options), options.k, options);
}

std::vector<double> validation_errors(const BasePlanner& planner, std::span<const Workload* const> validation,
                                      const ConfigRegion& region, double noise_sigma) {
  const auto base = planner.classifier.base_spec();
  const std::size_t dim = region.size();
  std::vector<double> predicted, actual;
  predicted.reserve(validation.size() * dim);
  actual.reserve(validation.size() * dim);
  for (const Workload* w : validation) {
    const auto p = planner.predict(observe_indexes(*w, base, noise_sigma, region));
    const auto a = w->ground_truth_surface.rebased(base);
    predicted.insert(predicted.end(), p.values().begin(), p.values().end());
    actual.insert(actual.end(), a.values().begin(), a.values().end());
  }
  std::vector<double> errors(validation.size());
  kernels::parallel::surface_errors(predicted, actual, dim, errors);
  return errors;
}

const BasePlanner& PlannerModel::at(ResourceSpec base) const {
  auto it = by_base.find(base);
  if (it == by_base.end()) throw InvalidArgument("no planner trained for base " + to_string(base));
  return it->second;
}

}  // namespace rightsize
