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
#include <unordered_map>
#include <vector>

#include "tip/model.hpp"

namespace tip {

struct PointRef {
  TrajectoryId trajectory = 0;
  std::uint32_t point = 0;

  friend bool operator==(const PointRef&, const PointRef&) = default;
  friend auto operator<=>(const PointRef&, const PointRef&) = default;
};

// Uniform grid over trajectory points. With the cell edge equal to the query
// radius a circular range query only inspects the 3x3 neighbourhood of the
// query cell.
class SpatialPointIndex {
 public:
  SpatialPointIndex(std::span<const Trajectory> trajectories, double cell_size);

  // Points within radius of center (inclusive), sorted by (trajectory, point).
  std::vector<PointRef> query(const GeoPoint& center, double radius) const;

  // Distinct trajectories with at least one point within radius, ascending.
  std::vector<TrajectoryId> query_trajectories(const GeoPoint& center, double radius) const;

  double cell_size() const { return cell_size_; }
  std::size_t cell_count() const { return cells_.size(); }
  std::size_t point_count() const { return point_count_; }

 private:
  struct CellKey {
    std::int64_t cx;
    std::int64_t cy;
    friend bool operator==(const CellKey&, const CellKey&) = default;
  };
  struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const noexcept;
  };

  CellKey cell_of(const GeoPoint& p) const;
  template <class Fn>
  void for_each_candidate(const GeoPoint& center, double radius, Fn&& fn) const;

  std::span<const Trajectory> trajectories_;
  double cell_size_;
  std::size_t point_count_ = 0;
  std::unordered_map<CellKey, std::vector<PointRef>, CellKeyHash> cells_;
};

}  // namespace tip
