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

// JSON persistence for every artifact the command-line tool exchanges.
// Objects keep insertion order so output bytes depend only on content.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rightsize/estimator.hpp"
#include "rightsize/planner.hpp"
#include "rightsize/scheduler.hpp"
#include "rightsize/simulator.hpp"
#include "rightsize/workload_synth.hpp"

namespace rightsize {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(ResourceSpec spec);
ResourceSpec spec_from_json(const Json& j);
/// Accepts "6,8", "6C,8G" or "(6C, 8G)".
ResourceSpec parse_spec(const std::string& text);

Json to_json(const ConfigRegion& region);
ConfigRegion region_from_json(const Json& j);

Json to_json(const ScalingSurface& surface);
ScalingSurface surface_from_json(const Json& j);

Json to_json(const SystemIndexVector& v);
SystemIndexVector indexes_from_json(const Json& j);

Json to_json(const InterferenceProfile& p);
InterferenceProfile profile_from_json(const Json& j);

Json to_json(const NodeModel& node);
NodeModel node_model_from_json(const Json& j);

Json to_json(const SynthOptions& options);
SynthOptions synth_options_from_json(const Json& j);

Json to_json(const WorkloadArchetype& a);
WorkloadArchetype archetype_from_json(const Json& j);

/// Options, archetypes and per-workload seeds; workloads are rebuilt from
/// these on load.
Json to_json(const WorkloadSet& set);
WorkloadSet workload_set_from_json(const Json& j);

Json to_json(const FeatureSelection& s);
FeatureSelection selection_from_json(const Json& j);

Json to_json(const PlannerModel& model);
PlannerModel planner_model_from_json(const Json& j);

Json reference_tracks_to_json(std::span<const ReferenceTrack> tracks, const NodeModel& node);
std::vector<ReferenceTrack> reference_tracks_from_json(const Json& j);

/// Workload id, spec it will run with, and its interference profile.
struct ProfileRecord {
  int workload_id = 0;
  ResourceSpec spec;
  InterferenceProfile profile;
};

Json profiles_to_json(std::span<const ProfileRecord> records);
std::vector<ProfileRecord> profiles_from_json(const Json& j);

Json nodes_to_json(std::span<const NodeState> nodes);
std::vector<NodeState> nodes_from_json(const Json& j);

/// One JSON object per line.
std::string placements_to_jsonl(std::span<const Placement> placements);
std::vector<Placement> placements_from_jsonl(const std::string& text);

Json to_json(const SlowdownReport& report);
std::string slowdowns_to_csv(const SlowdownReport& report);

Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Throws InvalidArgument unless j["schema"] == schema and the version matches.
void check_schema(const Json& j, const std::string& schema);

}  // namespace rightsize
