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

#include "rightsize/io.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "rightsize/common.hpp"

namespace rightsize {

namespace {

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad field '") + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.is_object() && j.contains(key) ? get<T>(j, key) : fallback;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  require(j.is_array(), "matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    require(row.is_array() && static_cast<Eigen::Index>(row.size()) == cols, "ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
  }
  return m;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  require(j.is_array(), "vector must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

Json header(const std::string& schema) {
  Json j;
  j["schema"] = schema;
  j["schema_version"] = kSchemaVersion;
  return j;
}

Json classifier_to_json(const SurfaceClassifier& c) {
  const auto& p = c.parts();
  Json j;
  j["base_spec"] = to_json(p.base_spec);
  j["k"] = p.k;
  j["kind"] = p.kind == ClassifierKind::kMlp ? "mlp" : "nearest_centroid";
  Json features = Json::array();
  for (auto f : p.features) features.push_back(kIndexNames[f]);
  j["features"] = features;
  j["mean"] = p.mean;
  j["scale"] = p.scale;
  j["constant_label"] = p.constant_label ? Json(*p.constant_label) : Json(nullptr);
  if (!p.constant_label) {
    if (p.kind == ClassifierKind::kMlp) {
      j["mlp"] = {{"w1", matrix_to_json(p.mlp.w1())},
                  {"b1", vector_to_json(p.mlp.b1())},
                  {"w2", matrix_to_json(p.mlp.w2())},
                  {"b2", vector_to_json(p.mlp.b2())}};
    } else {
      Json present = Json::array();
      for (bool b : p.nearest.present()) present.push_back(b);
      j["nearest_centroid"] = {{"centroids", matrix_to_json(p.nearest.centroids())}, {"present", present}};
    }
  }
  return j;
}

std::size_t feature_index(const std::string& name) {
  const auto id = index_from_name(name);
  if (!id) throw InvalidArgument("unknown index '" + name + "'");
  return static_cast<std::size_t>(*id);
}

SurfaceClassifier classifier_from_json(const Json& j) {
  SurfaceClassifier::Parts p;
  p.base_spec = spec_from_json(get<Json>(j, "base_spec"));
  p.k = get<int>(j, "k");
  const auto kind = get<std::string>(j, "kind");
  require(kind == "mlp" || kind == "nearest_centroid", "unknown classifier kind '" + kind + "'");
  p.kind = kind == "mlp" ? ClassifierKind::kMlp : ClassifierKind::kNearestCentroid;
  for (const auto& f : get<Json>(j, "features")) p.features.push_back(feature_index(f.get<std::string>()));
  p.mean = get<std::vector<double>>(j, "mean");
  p.scale = get<std::vector<double>>(j, "scale");
  const auto& cl = get<Json>(j, "constant_label");
  if (!cl.is_null()) {
    p.constant_label = cl.get<int>();
  } else if (p.kind == ClassifierKind::kMlp) {
    const auto& m = get<Json>(j, "mlp");
    p.mlp = MlpClassifier(matrix_from_json(get<Json>(m, "w1")), vector_from_json(get<Json>(m, "b1")),
                          matrix_from_json(get<Json>(m, "w2")), vector_from_json(get<Json>(m, "b2")));
  } else {
    const auto& m = get<Json>(j, "nearest_centroid");
    p.nearest = NearestCentroidClassifier(matrix_from_json(get<Json>(m, "centroids")),
                                          get<std::vector<bool>>(m, "present"));
  }
  return SurfaceClassifier(std::move(p));
}

Json clustering_to_json(const SurfaceClustering& c) {
  Json j;
  j["k"] = c.k;
  j["cost"] = c.cost;
  j["iterations"] = c.iterations;
  Json centroids = Json::array();
  for (const auto& s : c.centroids) centroids.push_back(std::vector<double>(s.values().begin(), s.values().end()));
  j["centroids"] = centroids;
  Json assignments = Json::array();
  for (const auto& [id, cluster] : c.assignments) assignments.push_back({{"workload_id", id}, {"cluster", cluster}});
  j["assignments"] = assignments;
  return j;
}

SurfaceClustering clustering_from_json(const Json& j, const ConfigRegion& region, ResourceSpec base) {
  SurfaceClustering c;
  c.k = get<std::size_t>(j, "k");
  c.cost = get<double>(j, "cost");
  c.iterations = get<int>(j, "iterations");
  for (const auto& v : get<Json>(j, "centroids")) c.centroids.emplace_back(region, base, v.get<std::vector<double>>());
  require(c.centroids.size() == c.k, "clustering: centroid count differs from k");
  for (const auto& a : get<Json>(j, "assignments")) {
    c.assignments[get<int>(a, "workload_id")] = get<int>(a, "cluster");
  }
  return c;
}

}  // namespace

Json to_json(ResourceSpec spec) { return {{"cores", spec.cores}, {"memory_gb", spec.memory_gb}}; }

ResourceSpec spec_from_json(const Json& j) { return {get<int>(j, "cores"), get<int>(j, "memory_gb")}; }

ResourceSpec parse_spec(const std::string& text) {
  static const std::regex re(R"(^\s*\(?\s*(\d+)\s*[cC]?\s*,\s*(\d+)\s*[gG]?\s*\)?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw InvalidArgument("cannot parse specification '" + text + "'");
  return {std::stoi(m[1].str()), std::stoi(m[2].str())};
}

Json to_json(const ConfigRegion& region) {
  return {{"core_levels", region.core_levels()}, {"memory_levels", region.memory_levels()}};
}

ConfigRegion region_from_json(const Json& j) {
  return ConfigRegion(get<std::vector<int>>(j, "core_levels"), get<std::vector<int>>(j, "memory_levels"));
}

Json to_json(const ScalingSurface& surface) {
  return {{"region", to_json(surface.region())},
          {"base_spec", to_json(surface.base_spec())},
          {"speedups", std::vector<double>(surface.values().begin(), surface.values().end())}};
}

ScalingSurface surface_from_json(const Json& j) {
  return ScalingSurface(region_from_json(get<Json>(j, "region")), spec_from_json(get<Json>(j, "base_spec")),
                        get<std::vector<double>>(j, "speedups"));
}

Json to_json(const SystemIndexVector& v) {
  Json j;
  for (std::size_t i = 0; i < kNumIndexes; ++i) j[std::string(kIndexNames[i])] = v.values[i];
  return j;
}

SystemIndexVector indexes_from_json(const Json& j) {
  require(j.is_object() && j.size() == kNumIndexes, "index vector must have exactly 15 named fields");
  SystemIndexVector v;
  for (std::size_t i = 0; i < kNumIndexes; ++i) v.values[i] = get<double>(j, std::string(kIndexNames[i]).c_str());
  require(v.is_valid(), "index vector must be finite, non-negative, with cache_misses <= cache_references");
  return v;
}

Json to_json(const InterferenceProfile& p) {
  Json j;
  for (auto r : kAllSharedResources) {
    j[std::string(name_of(r))] = {{"pressure", p[r].pressure}, {"sensitivity", p[r].sensitivity}};
  }
  return j;
}

InterferenceProfile profile_from_json(const Json& j) {
  InterferenceProfile p;
  for (auto r : kAllSharedResources) {
    const auto& lv = get<Json>(j, std::string(name_of(r)).c_str());
    p[r] = {get<int>(lv, "pressure"), get<int>(lv, "sensitivity")};
    require(p[r].pressure >= 0 && p[r].sensitivity >= 0, "profile levels must be non-negative");
  }
  return p;
}

Json to_json(const NodeModel& n) {
  return {{"llc_ways", n.llc_ways},
          {"levels", n.levels},
          {"phy_mbw_gbps", n.phy_mbw_gbps},
          {"phy_nbw_gbps", n.phy_nbw_gbps},
          {"iops_scaler", n.iops_scaler},
          {"kmps_per_level", n.kmps_per_level},
          {"stressor_slope", n.stressor_slope},
          {"stress_response", n.stress_response}};
}

NodeModel node_model_from_json(const Json& j) {
  NodeModel d;
  NodeModel n;
  n.llc_ways = get_or(j, "llc_ways", d.llc_ways);
  n.levels = get_or(j, "levels", d.levels);
  n.phy_mbw_gbps = get_or(j, "phy_mbw_gbps", d.phy_mbw_gbps);
  n.phy_nbw_gbps = get_or(j, "phy_nbw_gbps", d.phy_nbw_gbps);
  n.iops_scaler = get_or(j, "iops_scaler", d.iops_scaler);
  n.kmps_per_level = get_or(j, "kmps_per_level", d.kmps_per_level);
  n.stressor_slope = get_or(j, "stressor_slope", d.stressor_slope);
  n.stress_response = get_or(j, "stress_response", d.stress_response);
  require(n.llc_ways >= 1 && n.levels >= 1, "node model needs ways and levels");
  return n;
}

Json to_json(const SynthOptions& o) {
  return {{"region", to_json(o.region)},
          {"surface_base", to_json(o.surface_base)},
          {"node", to_json(o.node)},
          {"surface_noise", o.surface_noise},
          {"profile_jitter", o.profile_jitter}};
}

SynthOptions synth_options_from_json(const Json& j) {
  SynthOptions o;
  if (j.contains("region")) o.region = region_from_json(j["region"]);
  if (j.contains("surface_base")) o.surface_base = spec_from_json(j["surface_base"]);
  if (j.contains("node")) o.node = node_model_from_json(j["node"]);
  o.surface_noise = get_or(j, "surface_noise", o.surface_noise);
  o.profile_jitter = get_or(j, "profile_jitter", o.profile_jitter);
  o.region.require_index(o.surface_base);
  return o;
}

Json to_json(const WorkloadArchetype& a) {
  Json j;
  j["archetype_id"] = a.archetype_id;
  j["shape"] = {{"saturation_cores", a.shape.saturation_cores},
                {"saturation_memory_gb", a.shape.saturation_memory_gb},
                {"core_exponent", a.shape.core_exponent},
                {"memory_exponent", a.shape.memory_exponent}};
  j["base_tps"] = a.base_tps;
  j["index_offsets"] = a.index_offsets;
  j["typical_profile"] = to_json(a.typical_profile);
  j["llc_knee_ways"] = a.llc_knee_ways;
  return j;
}

WorkloadArchetype archetype_from_json(const Json& j) {
  WorkloadArchetype a;
  a.archetype_id = get<int>(j, "archetype_id");
  const auto& s = get<Json>(j, "shape");
  a.shape = {get<int>(s, "saturation_cores"), get<int>(s, "saturation_memory_gb"), get<double>(s, "core_exponent"),
             get<double>(s, "memory_exponent")};
  a.base_tps = get<double>(j, "base_tps");
  a.index_offsets = get<std::array<double, kNumIndexes>>(j, "index_offsets");
  a.typical_profile = profile_from_json(get<Json>(j, "typical_profile"));
  a.llc_knee_ways = get<int>(j, "llc_knee_ways");
  return a;
}

Json to_json(const WorkloadSet& set) {
  Json j = header("rightsize.workloads");
  j["options"] = to_json(set.options);
  Json archetypes = Json::array();
  for (const auto& a : set.archetypes) archetypes.push_back(to_json(a));
  j["archetypes"] = archetypes;
  Json workloads = Json::array();
  for (const auto& w : set.workloads) {
    workloads.push_back({{"workload_id", w.workload_id},
                         {"archetype_id", w.archetype_id},
                         {"noise_seed", w.noise_seed},
                         {"origin_spec", to_json(w.origin_spec)}});
  }
  j["workloads"] = workloads;
  return j;
}

WorkloadSet workload_set_from_json(const Json& j) {
  check_schema(j, "rightsize.workloads");
  WorkloadSet set;
  set.options = synth_options_from_json(get<Json>(j, "options"));
  for (const auto& a : get<Json>(j, "archetypes")) set.archetypes.push_back(archetype_from_json(a));
  for (const auto& w : get<Json>(j, "workloads")) {
    const int aid = get<int>(w, "archetype_id");
    const auto it = std::find_if(set.archetypes.begin(), set.archetypes.end(),
                                 [&](const WorkloadArchetype& a) { return a.archetype_id == aid; });
    require(it != set.archetypes.end(), "workload refers to unknown archetype " + std::to_string(aid));
    const auto origin = spec_from_json(get<Json>(w, "origin_spec"));
    set.options.region.require_index(origin);
    set.workloads.push_back(
        make_workload(*it, get<int>(w, "workload_id"), get<std::uint64_t>(w, "noise_seed"), origin, set.options));
  }
  return set;
}

Json to_json(const FeatureSelection& s) {
  Json selected = Json::array();
  for (auto f : s.selected) selected.push_back(kIndexNames[f]);
  Json weights;
  for (std::size_t i = 0; i < kNumIndexes; ++i) weights[std::string(kIndexNames[i])] = s.weights[i];
  return {{"lambda", s.lambda}, {"selected", selected}, {"weights", weights}};
}

FeatureSelection selection_from_json(const Json& j) {
  FeatureSelection s;
  s.lambda = get<double>(j, "lambda");
  for (const auto& f : get<Json>(j, "selected")) s.selected.push_back(feature_index(f.get<std::string>()));
  const auto& w = get<Json>(j, "weights");
  for (std::size_t i = 0; i < kNumIndexes; ++i) s.weights[i] = get<double>(w, std::string(kIndexNames[i]).c_str());
  return s;
}

Json to_json(const PlannerModel& model) {
  Json j = header("rightsize.model");
  j["region"] = to_json(model.region);
  Json planners = Json::array();
  for (const auto& [base, p] : model.by_base) {
    planners.push_back({{"base_spec", to_json(base)},
                        {"selection", to_json(p.selection)},
                        {"clustering", clustering_to_json(p.clustering)},
                        {"classifier", classifier_to_json(p.classifier)}});
  }
  j["planners"] = planners;
  return j;
}

PlannerModel planner_model_from_json(const Json& j) {
  check_schema(j, "rightsize.model");
  PlannerModel m;
  m.region = region_from_json(get<Json>(j, "region"));
  for (const auto& p : get<Json>(j, "planners")) {
    const auto base = spec_from_json(get<Json>(p, "base_spec"));
    m.region.require_index(base);
    BasePlanner bp{selection_from_json(get<Json>(p, "selection")),
                   clustering_from_json(get<Json>(p, "clustering"), m.region, base),
                   classifier_from_json(get<Json>(p, "classifier"))};
    require(static_cast<std::size_t>(bp.classifier.k()) == bp.clustering.k, "model: classifier and clustering disagree on k");
    m.by_base.emplace(base, std::move(bp));
  }
  return m;
}

Json reference_tracks_to_json(std::span<const ReferenceTrack> tracks, const NodeModel& node) {
  Json j = header("rightsize.reference_tracks");
  j["llc_ways"] = node.llc_ways;
  j["levels"] = node.levels;
  Json arr = Json::array();
  for (const auto& t : tracks) arr.push_back({{"level", t.level}, {"kmps", t.track.kmps}});
  j["tracks"] = arr;
  return j;
}

std::vector<ReferenceTrack> reference_tracks_from_json(const Json& j) {
  check_schema(j, "rightsize.reference_tracks");
  std::vector<ReferenceTrack> out;
  for (const auto& t : get<Json>(j, "tracks")) {
    out.push_back({get<int>(t, "level"), {get<std::vector<double>>(t, "kmps")}});
  }
  return out;
}

Json profiles_to_json(std::span<const ProfileRecord> records) {
  Json j = header("rightsize.profiles");
  Json arr = Json::array();
  for (const auto& r : records) {
    arr.push_back({{"workload_id", r.workload_id}, {"spec", to_json(r.spec)}, {"profile", to_json(r.profile)}});
  }
  j["profiles"] = arr;
  return j;
}

std::vector<ProfileRecord> profiles_from_json(const Json& j) {
  check_schema(j, "rightsize.profiles");
  std::vector<ProfileRecord> out;
  for (const auto& r : get<Json>(j, "profiles")) {
    out.push_back({get<int>(r, "workload_id"), spec_from_json(get<Json>(r, "spec")),
                   profile_from_json(get<Json>(r, "profile"))});
  }
  return out;
}

Json nodes_to_json(std::span<const NodeState> nodes) {
  Json j = header("rightsize.nodes");
  Json arr = Json::array();
  for (const auto& n : nodes) arr.push_back({{"node_id", n.node_id}, {"capacity", to_json(n.capacity)}});
  j["nodes"] = arr;
  return j;
}

std::vector<NodeState> nodes_from_json(const Json& j) {
  check_schema(j, "rightsize.nodes");
  std::vector<NodeState> out;
  for (const auto& n : get<Json>(j, "nodes")) {
    out.emplace_back(get<int>(n, "node_id"), spec_from_json(get<Json>(n, "capacity")));
  }
  return out;
}

std::string placements_to_jsonl(std::span<const Placement> placements) {
  std::string out;
  for (const auto& p : placements) {
    Json line = {{"workload_id", p.workload_id}, {"node_id", p.node_id}, {"score", p.score}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::vector<Placement> placements_from_jsonl(const std::string& text) {
  std::vector<Placement> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("bad placement line: ") + e.what());
    }
    out.push_back({get<int>(j, "workload_id"), get<int>(j, "node_id"), get_or(j, "score", 0.0)});
  }
  return out;
}

Json to_json(const SlowdownReport& report) {
  Json j = header("rightsize.simulation");
  Json arr = Json::array();
  for (const auto& w : report.workloads) {
    arr.push_back({{"workload_id", w.workload_id}, {"node_id", w.node_id}, {"sd", w.sd}});
  }
  j["workloads"] = arr;
  j["p_sys"] = report.metrics.p_sys;
  j["unfairness"] = report.metrics.unfairness;
  return j;
}

std::string slowdowns_to_csv(const SlowdownReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "workload_id,node_id,sd\n";
  for (const auto& w : report.workloads) out << w.workload_id << ',' << w.node_id << ',' << w.sd << '\n';
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void write_json_file(const std::filesystem::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

void check_schema(const Json& j, const std::string& schema) {
  require(j.is_object(), "expected a JSON object with schema '" + schema + "'");
  require(j.value("schema", std::string()) == schema, "expected schema '" + schema + "'");
  require(j.value("schema_version", -1) == kSchemaVersion,
          "unsupported schema version for '" + schema + "'");
}

}  // namespace rightsize
