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

#include "rightsize/indexes.hpp"

#include <cmath>

namespace rightsize {

std::optional<IndexId> index_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumIndexes; ++i) {
    if (kIndexNames[i] == name) return static_cast<IndexId>(i);
  }
  return std::nullopt;
}

bool SystemIndexVector::all_finite() const {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

bool SystemIndexVector::is_valid() const {
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) return false;
  }
  return (*this)[IndexId::kCacheMisses] <= (*this)[IndexId::kCacheReferences];
}

}  // namespace rightsize
