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

#include <cmath>

namespace tip {

// Planar coordinates in meters after projection (x east, y north).
struct GeoPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct LatLng {
  double lat = 0.0;
  double lng = 0.0;
};

inline double distance(const GeoPoint& a, const GeoPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline double squared_distance(const GeoPoint& a, const GeoPoint& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// distance(a, b) <= radius, exact at the boundary.
inline bool within(const GeoPoint& a, const GeoPoint& b, double radius) {
  const double d2 = squared_distance(a, b);
  const double r2 = radius * radius;
  if (d2 <= r2) return true;
  if (d2 > r2 * (1.0 + 1e-12)) return false;
  return distance(a, b) <= radius;
}

// Equirectangular projection around a reference latitude/longitude. Accurate
// to well under a meter across city-sized extents.
class Projection {
 public:
  static constexpr double kEarthRadiusMeters = 6371008.8;

  Projection() = default;
  Projection(double ref_lat_deg, double ref_lng_deg);

  GeoPoint project(const LatLng& p) const;
  LatLng unproject(const GeoPoint& p) const;

  double ref_lat() const { return ref_lat_; }
  double ref_lng() const { return ref_lng_; }

 private:
  double ref_lat_ = 0.0;
  double ref_lng_ = 0.0;
  double cos_ref_ = 1.0;
};

}  // namespace tip
