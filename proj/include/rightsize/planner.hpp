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

// Capacity planner: predicts a workload's scaling surface from counters
// observed at one base specification, then searches the predicted surface
// for the cheapest specification meeting a performance requirement.
//
// Training, per base specification:
//   1. Lasso picks the counters that track throughput.
//   2. K-means groups the training workloads' scaling surfaces; each
//      cluster's mean surface is its representative.
//   3. A classifier learns counters -> cluster.
// Prediction classifies the new workload and returns the representative.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rightsize/classifier.hpp"
#include "rightsize/lasso.hpp"
#include "rightsize/region.hpp"
#include "rightsize/workload_synth.hpp"

namespace rightsize {

struct SurfaceClustering {
  std::size_t k = 0;
  std::vector<ScalingSurface> centroids;
  std::map<int, int> assignments;  // workload_id -> cluster
  double cost = 0.0;               // within-cluster sum of squares
  int iterations = 0;
};

/// K-means over the flattened speedup vectors. `workload_ids` names each
/// surface in the returned assignments (defaults to 0..n-1 when empty).
/// Throws InvalidArgument if k is 0 or exceeds the surface count, or the
/// surfaces do not share one region and base.
SurfaceClustering cluster_surfaces(std::span<const ScalingSurface> surfaces, std::size_t k, std::uint64_t rng_seed,
                                   std::span<const int> workload_ids = {});

enum class ClassifierKind { kMlp, kNearestCentroid };

struct ClassifierOptions {
  ClassifierKind kind = ClassifierKind::kMlp;
  MlpOptions mlp;
};

struct LabeledIndexes {
  SystemIndexVector indexes;
  int cluster = 0;
};

/// Counters are mapped through log1p before selection, standardization and
/// classification; they span many orders of magnitude.
SystemIndexVector planner_features(const SystemIndexVector& raw);

/// Classifier from counters (selected features only) to ClusterID.
class SurfaceClassifier {
 public:
  struct Parts {
    ResourceSpec base_spec;
    int k = 0;
    ClassifierKind kind = ClassifierKind::kMlp;
    std::vector<std::size_t> features;
    std::vector<double> mean;
    std::vector<double> scale;
    std::optional<int> constant_label;
    MlpClassifier mlp;
    NearestCentroidClassifier nearest;
  };

  explicit SurfaceClassifier(Parts parts);

  /// Throws InvalidArgument on non-finite input.
  int predict(const SystemIndexVector& raw_indexes) const;

  ResourceSpec base_spec() const { return p_.base_spec; }
  int k() const { return p_.k; }
  const Parts& parts() const { return p_; }

 private:
  Parts p_;
};

/// Fits on the selected features, standardized by training mean/sd.
/// Throws InvalidArgument for an empty training set, labels outside [0, k)
/// or an empty feature selection.
SurfaceClassifier train_classifier(std::span<const LabeledIndexes> training, ResourceSpec base_spec,
                                   const FeatureSelection& selection, int k, const ClassifierOptions& options);

/// Representative surface of the predicted cluster, unmodified.
ScalingSurface predict_surface(const SurfaceClassifier& classifier, const SurfaceClustering& clustering,
                               const SystemIndexVector& indexes);

/// sum_i |predicted_i / actual_i - 1| / N_conf.
double surface_error(const ScalingSurface& predicted, const ScalingSurface& actual);
double surface_error(std::span<const double> predicted, std::span<const double> actual);

enum class PlanningPolicy { kScaleUp, kScaleDown };

struct PlanningRequest {
  PlanningPolicy policy = PlanningPolicy::kScaleUp;
  ResourceSpec current_spec;
  double target_speedup = 1.0;         // scale-up: relative to current_spec
  double performance_tolerance = 0.05;  // scale-down slack
  CostWeights cost_weights;
};

/// Relative slack absorbing rounding when a speedup ratio lands exactly on
/// the requested target.
inline constexpr double kSpeedupSlack = 1e-12;

/// Whether `candidate` meets `request` on `surface`.
bool satisfies(const PlanningRequest& request, const ScalingSurface& surface, ResourceSpec candidate);

/// Cheapest grid spec satisfying the request (ties: fewer cores, then less
/// memory). Exhaustive scan. Throws Infeasible when no grid spec qualifies,
/// OutOfRegion when current_spec is off the grid, InvalidArgument for a
/// malformed request.
ResourceSpec plan_capacity(const PlanningRequest& request, const ScalingSurface& surface);

/// Everything the planner learned for one base specification.
struct BasePlanner {
  FeatureSelection selection;
  SurfaceClustering clustering;
  SurfaceClassifier classifier;

  ScalingSurface predict(const SystemIndexVector& indexes) const {
    return predict_surface(classifier, clustering, indexes);
  }
};

struct PlannerTrainingOptions {
  int k = 20;
  double noise_sigma = 0.05;
  std::optional<double> lambda;  // unset: 5-fold cross-validation
  ClassifierOptions classifier;
  std::uint64_t seed = 0;
};

/// Observations, target surfaces and selected features at one base; the
/// part of training that does not depend on k.
struct PreparedTraining {
  ResourceSpec base;
  std::vector<int> workload_ids;
  std::vector<SystemIndexVector> observed;
  std::vector<ScalingSurface> surfaces;  // rebased to `base`
  FeatureSelection selection;
};

PreparedTraining prepare_training(std::span<const Workload* const> training, ResourceSpec base,
                                  const ConfigRegion& region, const PlannerTrainingOptions& options);

/// Clusters the prepared surfaces into k groups and fits the classifier.
BasePlanner fit_planner(const PreparedTraining& prepared, int k, const PlannerTrainingOptions& options);

/// prepare_training followed by fit_planner with options.k.
BasePlanner train_base_planner(std::span<const Workload* const> training, ResourceSpec base,
                               const ConfigRegion& region, const PlannerTrainingOptions& options);

/// Eq.-1 error of the prediction for each workload, indexes observed at the
/// planner's base with the given noise.
std::vector<double> validation_errors(const BasePlanner& planner, std::span<const Workload* const> validation,
                                      const ConfigRegion& region, double noise_sigma);

/// Classifier registry keyed by base specification plus the region the
/// surfaces live on. This is what the model bundle file stores.
struct PlannerModel {
  ConfigRegion region = ConfigRegion::default_region();
  std::map<ResourceSpec, BasePlanner> by_base;

  /// Throws InvalidArgument when no planner was trained for `base`.
  const BasePlanner& at(ResourceSpec base) const;
};

}  // namespace rightsize
