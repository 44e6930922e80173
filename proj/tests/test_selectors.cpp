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

#include "support/fixtures.hpp"
#include "tip/errors.hpp"
#include "tip/selectors.hpp"

namespace tip {
namespace {

using testing::d1_golden;
using testing::d1_instance;
using testing::six_board_instance;
using testing::kOneMinusInvE;

// Exhaustive optimum over subsets of `items`, independent of the solvers.
double brute_opt(const InfluenceIndex& index, const BillboardSet& items, Cost budget) {
  double best = 0.0;
  for (const auto& s : testing::all_subsets(items)) {
    if (index.total_cost(s) <= budget) best = std::max(best, index.influence(s));
  }
  return best;
}

void expect_consistent(const InfluenceIndex& index, const Selection& s, Cost budget) {
  EXPECT_LE(s.cost, budget);
  EXPECT_EQ(s.cost, index.total_cost(s.chosen));
  EXPECT_NEAR(s.influence, index.influence(s.chosen), 1e-9);
  EXPECT_TRUE(std::is_sorted(s.chosen.begin(), s.chosen.end()));
}

TEST(GreedySel, ZeroBudget) {
  const auto index = InfluenceIndex::build(d1_instance());
  const auto s = greedy_sel(index, index.all_billboards(), 0);
  EXPECT_TRUE(s.chosen.empty());
  EXPECT_EQ(s.cost, 0);
  EXPECT_EQ(s.influence, 0.0);
}

TEST(GreedySel, SingleFallbackOnPathologicalPair) {
  const auto index = InfluenceIndex::build(testing::pathological_instance(11));
  const auto s = greedy_sel(index, index.all_billboards(), 11);
  EXPECT_EQ(s.chosen, (BillboardSet{1}));
  EXPECT_DOUBLE_EQ(s.influence, 10.0);
}

TEST(GreedySel, D1HandTrace) {
  // Unit gains 0.6 (b2), then 1.4/4 (b3) exhausts the budget of 5.
  const auto index = InfluenceIndex::build(d1_instance());
  const auto s = greedy_sel(index, index.all_billboards(), 5);
  EXPECT_EQ(s.chosen, (BillboardSet{2, 3}));
  EXPECT_NEAR(s.influence, 2.0, 1e-12);
  EXPECT_EQ(s.cost, 5);
}

TEST(GreedySel, TieBreakAndZeroCost) {
  // Twins 0 and 1 share one audience; 2 is free but reaches nothing new.
  const auto index = InfluenceIndex::from_forward_lists(
      {2, 2, 0, 3}, 3, {{{0, 0.5}}, {{0, 0.5}}, {{1, 0.1}}, {{2, 0.2}}});
  const auto s = greedy_sel(index, index.all_billboards(), 2);
  EXPECT_EQ(s.chosen, (BillboardSet{0, 2}));
  const auto z = greedy_sel(index, BillboardSet{2}, 0);
  EXPECT_EQ(z.chosen, (BillboardSet{2}));
}

TEST(GreedySel, SkipsUnaffordableAndContinues) {
  const auto index = InfluenceIndex::from_forward_lists(
      {1, 5, 1}, 3, {{{0, 0.9}}, {{1, 1.0}}, {{2, 0.5}}});
  const auto s = greedy_sel(index, index.all_billboards(), 2);
  EXPECT_EQ(s.chosen, (BillboardSet{0, 2}));
}

TEST(GreedySel, BoundOnD1Curve) {
  const auto index = InfluenceIndex::build(d1_instance());
  for (const auto& row : d1_golden()["opt_curve"]) {
    const Cost budget = row["budget"].get<Cost>();
    const auto s = greedy_sel(index, index.all_billboards(), budget);
    expect_consistent(index, s, budget);
    EXPECT_GE(s.influence, 0.5 * kOneMinusInvE * row["influence"].get<double>());
  }
}

TEST(EnumSel, SingletonUniverse) {
  const auto index = InfluenceIndex::build(d1_instance());
  const auto s = enum_sel(index, BillboardSet{3}, 4);
  EXPECT_EQ(s.chosen, (BillboardSet{3}));
  EXPECT_TRUE(enum_sel(index, BillboardSet{3}, 3).chosen.empty());
}

TEST(EnumSel, SixBoardRunningExample) {
  const auto index = InfluenceIndex::build(six_board_instance());
  const auto& six = d1_golden()["six_board"];
  const auto s = enum_sel(index, index.all_billboards(), 12, 2);
  EXPECT_EQ(s.chosen, (BillboardSet{2, 3, 4}));
  EXPECT_NEAR(s.influence, 2.5, 1e-12);
  EXPECT_NEAR(s.influence, six["opt_influence_L12"].get<double>(), 1e-12);
  EXPECT_NEAR(index.influence(six["h1_set"].get<BillboardSet>()), 1.9, 1e-12);
}

TEST(EnumSel, RejectsBadTau) {
  const auto index = InfluenceIndex::build(six_board_instance());
  EXPECT_THROW(enum_sel(index, index.all_billboards(), 5, 0), ConfigError);
}

TEST(EnumSel, DominatesGreedyAndMeetsBoundOnD1) {
  const auto index = InfluenceIndex::build(d1_instance());
  for (const auto& row : d1_golden()["opt_curve"]) {
    const Cost budget = row["budget"].get<Cost>();
    const double opt = row["influence"].get<double>();
    for (int tau : {1, 2, 3}) {
      const auto s = enum_sel(index, index.all_billboards(), budget, tau);
      expect_consistent(index, s, budget);
      EXPECT_GE(s.influence, greedy_sel(index, index.all_billboards(), budget).influence - 1e-12);
      EXPECT_GE(s.influence, kOneMinusInvE * opt - 1e-9);
      EXPECT_LE(s.influence, opt + 1e-9);
    }
  }
}

TEST(EnumSel, DominatesGreedyOnD2) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto d2 = testing::make_d2(seed);
    for (Cost budget : testing::kD2Budgets) {
      const auto g = greedy_sel(d2.index, d2.index.all_billboards(), budget);
      const auto e = enum_sel(d2.index, d2.index.all_billboards(), budget);
      expect_consistent(d2.index, g, budget);
      expect_consistent(d2.index, e, budget);
      EXPECT_GE(e.influence, g.influence - 1e-12) << "seed " << seed << " L " << budget;
    }
  }
}

TEST(EstimateBound, Trivial) {
  const auto index = InfluenceIndex::build(d1_instance());
  const auto all = index.all_billboards();
  EXPECT_EQ(estimate_bound(index, all, 0).value, 0.0);
  const auto full = estimate_bound(index, all, index.total_cost(all));
  EXPECT_NEAR(full.value, index.influence(all), 1e-12);
  EXPECT_FALSE(full.k_plus_one.has_value());
}

TEST(EstimateBound, SixBoardHandTrace) {
  // b3 first (unit 0.3), then b5 leads at 1.0/5 but overruns the last unit.
  const auto index = InfluenceIndex::build(six_board_instance());
  const auto u = estimate_bound(index, index.all_billboards(), 4);
  EXPECT_EQ(u.greedy_set, (BillboardSet{2}));
  ASSERT_TRUE(u.k_plus_one.has_value());
  EXPECT_EQ(*u.k_plus_one, 4u);
  EXPECT_NEAR(u.value, 0.9 + 1.0 * 0.2, 1e-12);
}

TEST(EstimateBound, AdmissibleOnEveryD1Cell) {
  const auto index = InfluenceIndex::build(d1_instance());
  for (const auto& cluster : testing::all_subsets(index.all_billboards())) {
    if (cluster.empty()) continue;
    for (Cost budget = 0; budget <= 10; ++budget) {
      const auto u = estimate_bound(index, cluster, budget);
      EXPECT_GE(u.value, index.influence(u.greedy_set) - 1e-12);
      EXPECT_GE(u.value, kOneMinusInvE * brute_opt(index, cluster, budget) - 1e-9);
    }
  }
}

}  // namespace
}  // namespace tip
