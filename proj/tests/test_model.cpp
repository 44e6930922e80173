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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "support/fixtures.hpp"
#include "tip/errors.hpp"
#include "tip/geometry.hpp"
#include "tip/model.hpp"

namespace tip {
namespace {

using testing::d1_golden;
using testing::d1_instance;
using testing::six_board_instance;

double haversine(LatLng a, LatLng b) {
  constexpr double kDeg = std::numbers::pi / 180.0;
  const double dlat = (b.lat - a.lat) * kDeg;
  const double dlng = (b.lng - a.lng) * kDeg;
  const double h = std::pow(std::sin(dlat / 2), 2) +
                   std::cos(a.lat * kDeg) * std::cos(b.lat * kDeg) * std::pow(std::sin(dlng / 2), 2);
  return 2.0 * Projection::kEarthRadiusMeters * std::asin(std::sqrt(h));
}

TEST(Distance, Basics) {
  EXPECT_EQ(distance({0, 0}, {0, 0}), 0.0);
  EXPECT_EQ(distance({0, 0}, {3, 4}), 5.0);
  EXPECT_EQ(distance({1, 2}, {-4, 7}), distance({-4, 7}, {1, 2}));
}

TEST(Distance, ProjectedMeridianKilometre) {
  const LatLng a{40.7128, -74.0060};
  const LatLng b{a.lat + 1000.0 / Projection::kEarthRadiusMeters * 180.0 / std::numbers::pi,
                 a.lng};
  const double reference = haversine(a, b);
  ASSERT_NEAR(reference, 1000.0, 1e-6);
  const Projection proj(40.75, -73.98);
  EXPECT_NEAR(distance(proj.project(a), proj.project(b)), reference, 1.0);
}

TEST(Projection, RoundTripAndPoles) {
  const Projection proj(40.7, -74.0);
  const LatLng p{40.71, -74.02};
  const auto back = proj.unproject(proj.project(p));
  EXPECT_NEAR(back.lat, p.lat, 1e-12);
  EXPECT_NEAR(back.lng, p.lng, 1e-12);
  EXPECT_THROW(Projection(90.0, 0.0), std::invalid_argument);
}

TEST(Influences, BoundaryInclusive) {
  const Billboard b{0, {0, 0}, 1.0, 1};
  EXPECT_TRUE(influences(b, {0, {{0, 100}}}, 100.0));
  EXPECT_FALSE(influences(b, {0, {{0, 101}}}, 100.0));
  EXPECT_TRUE(influences(b, {0, {{500, 500}, {60, 80}}}, 100.0));
}

TEST(Influences, D1Pair) {
  const auto inst = d1_instance();
  EXPECT_TRUE(influences(inst.billboards[2], inst.trajectories[3], inst.lambda));
}

TEST(PairProbability, Models) {
  ProblemInstance inst;
  inst.billboards = {{0, {0, 0}, 5.0, 1}, {1, {1000, 0}, 10.0, 1}};
  inst.trajectories = {{0, {{0, 10}}}};
  inst.lambda = 50.0;

  inst.model = UniformProbability{0.1};
  EXPECT_EQ(pair_probability(inst, inst.billboards[0], inst.trajectories[0]), 0.1);
  EXPECT_EQ(pair_probability(inst, inst.billboards[1], inst.trajectories[0]), 0.0);

  inst.model = PanelOverArea{20.0};
  EXPECT_EQ(pair_probability(inst, inst.billboards[0], inst.trajectories[0]), 0.25);

  inst.model = PanelHalfMax{};
  EXPECT_EQ(pair_probability(inst, inst.billboards[0], inst.trajectories[0]), 0.25);

  inst.model = PanelOverArea{10.0};
  EXPECT_THROW(inst.validate(), ConfigError);
  EXPECT_THROW(pair_probability(inst, inst.billboards[0], inst.trajectories[0]), ConfigError);
}

TEST(ProbabilityModel, ParseAndPrint) {
  for (const char* text : {"uniform:0.1", "panel:40", "panel-half"}) {
    EXPECT_EQ(to_string(parse_probability_model(text)), text);
  }
  EXPECT_THROW(parse_probability_model("uniform:0"), ConfigError);
  EXPECT_THROW(parse_probability_model("uniform:1.5"), ConfigError);
  EXPECT_THROW(parse_probability_model("panel:-3"), ConfigError);
  EXPECT_THROW(parse_probability_model("gaussian"), ConfigError);
}

TEST(SetProbability, Examples) {
  const double two[] = {0.1, 0.3};
  EXPECT_EQ(set_probability(two), 0.37);
  EXPECT_EQ(set_probability(std::span<const double>{}), 0.0);
  const double certain[] = {1.0, 0.5};
  EXPECT_EQ(set_probability(certain), 1.0);
}

TEST(SetProbability, PermutationInvariantAndBounded) {
  std::vector<double> p = {0.05, 0.4, 0.9, 0.33, 0.0, 0.71};
  const double ref = set_probability(p);
  std::sort(p.begin(), p.end());
  do {
    EXPECT_NEAR(set_probability(p), ref, 1e-15);
    EXPECT_GE(set_probability(p), 0.0);
    EXPECT_LE(set_probability(p), 1.0);
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST(InfluenceNaive, Examples) {
  const auto six = six_board_instance();
  EXPECT_EQ(influence_naive(six, BillboardSet{}), 0.0);
  EXPECT_NEAR(influence_naive(six, BillboardSet{0, 1, 2}), 1.11, 1e-12);

  const auto d1 = d1_instance();
  EXPECT_NEAR(influence_naive(d1, BillboardSet{1, 4}), d1_golden()["influence_1_4"].get<double>(),
              1e-12);
  EXPECT_THROW(influence_naive(d1, BillboardSet{6}), UnknownIdError);
}

TEST(InfluenceNaive, MonotoneAndSubmodularOnD1) {
  const auto d1 = d1_instance();
  BillboardSet all(d1.billboards.size());
  for (BillboardId b = 0; b < all.size(); ++b) all[b] = b;
  std::uint64_t state = 7;
  for (int trial = 0; trial < 200; ++trial) {
    const auto big = testing::random_subset(all, state, 0.6);
    const auto small = testing::random_subset(big, state, 0.5);
    const double v_small = influence_naive(d1, small);
    const double v_big = influence_naive(d1, big);
    EXPECT_LE(v_small, v_big + 1e-12);
    for (auto b : all) {
      if (std::binary_search(big.begin(), big.end(), b)) continue;
      auto s1 = small;
      auto s2 = big;
      s1.push_back(b);
      s2.push_back(b);
      const double gain_small = influence_naive(d1, make_set(s1)) - v_small;
      const double gain_big = influence_naive(d1, make_set(s2)) - v_big;
      EXPECT_GE(gain_small, gain_big - 1e-9);
    }
  }
}

TEST(InfluenceNaive, BoundedByReachedTrajectories) {
  const auto d1 = d1_instance();
  for (const auto& s : testing::all_subsets({0, 1, 2, 3, 4, 5})) {
    std::size_t reached = 0;
    for (const auto& t : d1.trajectories) {
      reached += std::any_of(s.begin(), s.end(), [&](BillboardId b) {
        return influences(d1.billboards[b], t, d1.lambda);
      });
    }
    EXPECT_LE(influence_naive(d1, s), static_cast<double>(reached) + 1e-12);
  }
}

TEST(ProblemInstance, Validation) {
  auto inst = six_board_instance();
  inst.lambda = 0.0;
  EXPECT_THROW(inst.validate(), ConfigError);
  inst = six_board_instance();
  inst.budget = -1;
  EXPECT_THROW(inst.validate(), ConfigError);
  inst = six_board_instance();
  inst.trajectories[0].points.clear();
  EXPECT_THROW(inst.validate(), Error);
  inst = six_board_instance();
  inst.billboards[0].cost = -2;
  EXPECT_THROW(inst.validate(), ConfigError);
}

}  // namespace
}  // namespace tip
