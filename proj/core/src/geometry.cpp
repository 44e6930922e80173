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

#include "tip/geometry.hpp"

#include <numbers>
#include <stdexcept>

namespace tip {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

Projection::Projection(double ref_lat_deg, double ref_lng_deg)
    : ref_lat_(ref_lat_deg), ref_lng_(ref_lng_deg) {
  if (!std::isfinite(ref_lat_deg) || !std::isfinite(ref_lng_deg) ||
      std::abs(ref_lat_deg) >= 90.0) {
    throw std::invalid_argument("projection reference latitude out of range");
  }
  cos_ref_ = std::cos(ref_lat_deg * kDegToRad);
}

GeoPoint Projection::project(const LatLng& p) const {
  return {kEarthRadiusMeters * (p.lng - ref_lng_) * kDegToRad * cos_ref_,
          kEarthRadiusMeters * (p.lat - ref_lat_) * kDegToRad};
}

LatLng Projection::unproject(const GeoPoint& p) const {
  return {ref_lat_ + p.y / (kEarthRadiusMeters * kDegToRad),
          ref_lng_ + p.x / (kEarthRadiusMeters * kDegToRad * cos_ref_)};
}

}  // namespace tip
