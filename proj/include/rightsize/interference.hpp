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
#include <optional>
#include <string_view>

namespace rightsize {

enum class SharedResource : std::size_t { kLlc = 0, kMemoryBandwidth, kDisk, kNetwork };

inline constexpr std::size_t kNumSharedResources = 4;

inline constexpr std::array<SharedResource, kNumSharedResources> kAllSharedResources = {
    SharedResource::kLlc, SharedResource::kMemoryBandwidth, SharedResource::kDisk,
    SharedResource::kNetwork};

inline constexpr std::array<std::string_view, kNumSharedResources> kSharedResourceNames = {
    "llc", "memory_bandwidth", "disk", "network"};

std::string_view name_of(SharedResource r);
std::optional<SharedResource> shared_resource_from_name(std::string_view name);

struct ResourceLevels {
  int pressure = 0;
  int sensitivity = 0;

  friend bool operator==(const ResourceLevels&, const ResourceLevels&) = default;
};

/// Discretized pressure on, and sensitivity to, each shared resource.
struct InterferenceProfile {
  std::array<ResourceLevels, kNumSharedResources> levels{};

  ResourceLevels& operator[](SharedResource r) { return levels[static_cast<std::size_t>(r)]; }
  const ResourceLevels& operator[](SharedResource r) const {
    return levels[static_cast<std::size_t>(r)];
  }

  /// Every level in [0, max_level].
  bool within(int max_level) const;

  friend bool operator==(const InterferenceProfile&, const InterferenceProfile&) = default;
};

}  // namespace rightsize
