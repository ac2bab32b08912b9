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

#include "rightsize/interference.hpp"

namespace rightsize {

std::string_view name_of(SharedResource r) { return kSharedResourceNames[static_cast<std::size_t>(r)]; }

std::optional<SharedResource> shared_resource_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumSharedResources; ++i) {
    if (kSharedResourceNames[i] == name) return static_cast<SharedResource>(i);
  }
  return std::nullopt;
}

bool InterferenceProfile::within(int max_level) const {
  for (const auto& l : levels) {
    if (l.pressure < 0 || l.pressure > max_level) return false;
    if (l.sensitivity < 0 || l.sensitivity > max_level) return false;
  }
  return true;
}

}  // namespace rightsize
