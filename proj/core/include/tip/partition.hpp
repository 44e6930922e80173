// Copyright 2026 The Authors.
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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tip/influence_index.hpp"

namespace tip {

// How the overlap ratio r_ij between two clusters is measured.
//   kSingleton:  max over b in C_i of Omega({b}|C_j) / I({b})
//   kVolume:     Omega(C_i, C_j) / I(U)
//   kExternal:   max over b in C_i of Omega({b}|U \ C_i) / I({b})  (ignores C_j)
//   kExhaustive: max over non-empty S in C_i of Omega(S|C_j) / I(S); only for
//                clusters of at most kExhaustiveClusterCap billboards.
enum class OverlapMode { kSingleton, kVolume, kExternal, kExhaustive };

inline constexpr std::size_t kExhaustiveClusterCap = 16;

OverlapMode parse_overlap_mode(std::string_view text);
std::string_view to_string(OverlapMode mode);

struct Cluster {
  std::uint32_t id = 0;
  BillboardSet members;
};

// Clusters are disjoint, cover the universe, and are ordered by size
// (ascending; ties by smallest member id).
struct Partition {
  double theta = 0.0;
  OverlapMode mode = OverlapMode::kSingleton;
  std::vector<Cluster> clusters;

  BillboardSet universe() const;
  std::size_t largest_cluster() const;
};

struct OverlapViolation {
  std::size_t i = 0;
  std::size_t j = 0;  // equals i for kExternal (C_i against the rest of U)
  double ratio = 0.0;
};

struct OverlapReport {
  OverlapMode mode = OverlapMode::kSingleton;
  double theta = 0.0;
  // ratios[i][j] = r_ij for i != j; the diagonal holds the external ratio of
  // C_i in kExternal mode and zero otherwise.
  std::vector<std::vector<double>> ratios;
  std::vector<OverlapViolation> violations;
  double max_ratio = 0.0;

  bool valid() const { return violations.empty(); }
};

// Omega(A, B) = I(A) + I(B) - I(A u B), clamped at zero.
double overlap(const InfluenceIndex& index, std::span<const BillboardId> a,
               std::span<const BillboardId> b);

// r_ij in [0, 1]. `universe` is only consulted in kExternal mode and defaults
// to every billboard in the index.
double overlap_ratio(const InfluenceIndex& index, std::span<const BillboardId> ci,
                     std::span<const BillboardId> cj, OverlapMode mode,
                     std::span<const BillboardId> universe = {});

// Agglomerative clustering from singletons: while some pair of clusters has
// max(r_ij, r_ji) > theta, merge the pair with the largest such ratio (ties:
// smaller (min id, max id), where a cluster's id is its smallest member).
Partition theta_partition(const InfluenceIndex& index, std::span<const BillboardId> universe,
                          double theta, OverlapMode mode);

// Recomputes all ratios and lists every pair above theta. Throws
// PartitionError when clusters are empty, overlap, or do not cover
// `universe` (defaults to every indexed billboard).
OverlapReport validate_partition(const InfluenceIndex& index, const Partition& partition,
                                 std::span<const BillboardId> universe = {});

// Orders clusters by size and renumbers them.
void normalize(Partition& partition);

}  // namespace tip
