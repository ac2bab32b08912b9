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

/// OS- and counter-level statistics observable without looking inside the
/// tenant's database. The order is fixed and is part of every file format.
enum class IndexId : std::size_t {
  kIpc = 0,
  kDtlbStoreMisses,
  kCacheMisses,
  kNodeStores,
  kIoReadBytes,
  kIoServicedRead,
  kMemoryUsage,
  kCpuUsage,
  kPageFault,
  kDtlbLoadMisses,
  kCacheReferences,
  kNodeLoads,
  kIoWriteBytes,
  kIoServicedWrite,
  kDirtyMemory,
};

inline constexpr std::size_t kNumIndexes = 15;

inline constexpr std::array<std::string_view, kNumIndexes> kIndexNames = {
    "ipc",           "dtlb_store_misses", "cache_misses",     "node_stores",
    "io_read_bytes", "io_serviced_read",  "memory_usage",     "cpu_usage",
    "page_fault",    "dtlb_load_misses",  "cache_references", "node_loads",
    "io_write_bytes", "io_serviced_write", "dirty_memory",
};

std::optional<IndexId> index_from_name(std::string_view name);

struct SystemIndexVector {
  std::array<double, kNumIndexes> values{};

  double& operator[](IndexId id) { return values[static_cast<std::size_t>(id)]; }
  double operator[](IndexId id) const { return values[static_cast<std::size_t>(id)]; }

  bool all_finite() const;
  /// Non-negative components and cache_misses <= cache_references.
  bool is_valid() const;

  friend bool operator==(const SystemIndexVector&, const SystemIndexVector&) = default;
};

}  // namespace rightsize
