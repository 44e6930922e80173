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

#include "tip/spatial_grid.hpp"

#include <algorithm>
#include <cmath>

#include "tip/errors.hpp"

namespace tip {

std::size_t SpatialPointIndex::CellKeyHash::operator()(const CellKey& k) const noexcept {
  auto h = static_cast<std::uint64_t>(k.cx) * 0x9E3779B97F4A7C15ULL;
  h ^= static_cast<std::uint64_t>(k.cy) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

SpatialPointIndex::SpatialPointIndex(std::span<const Trajectory> trajectories,
                                     double cell_size)
    : trajectories_(trajectories), cell_size_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw ConfigError("grid cell size must be positive");
  }
  for (std::size_t t = 0; t < trajectories.size(); ++t) {
    const auto& pts = trajectories[t].points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cells_[cell_of(pts[i])].push_back(
          {static_cast<TrajectoryId>(t), static_cast<std::uint32_t>(i)});
      ++point_count_;
    }
  }
}

SpatialPointIndex::CellKey SpatialPointIndex::cell_of(const GeoPoint& p) const {
  return {static_cast<std::int64_t>(std::floor(p.x / cell_size_)),
          static_cast<std::int64_t>(std::floor(p.y / cell_size_))};
}

template <class Fn>
void SpatialPointIndex::for_each_candidate(const GeoPoint& center, double radius,
                                           Fn&& fn) const {
  const auto reach = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(radius / cell_size_)));
  const auto c = cell_of(center);
  for (std::int64_t dx = -reach; dx <= reach; ++dx) {
    for (std::int64_t dy = -reach; dy <= reach; ++dy) {
      const auto it = cells_.find({c.cx + dx, c.cy + dy});
      if (it == cells_.end()) continue;
      for (const auto& ref : it->second) {
        const auto& p = trajectories_[ref.trajectory].points[ref.point];
        if (within(p, center, radius)) fn(ref);
      }
    }
  }
}

std::vector<PointRef> SpatialPointIndex::query(const GeoPoint& center, double radius) const {
  std::vector<PointRef> out;
  for_each_candidate(center, radius, [&](const PointRef& r) { out.push_back(r); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TrajectoryId> SpatialPointIndex::query_trajectories(const GeoPoint& center,
                                                                double radius) const {
  std::vector<TrajectoryId> out;
  for_each_candidate(center, radius, [&](const PointRef& r) { out.push_back(r.trajectory); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tip
