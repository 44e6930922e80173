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


#include "support/fixtures.hpp"

#include <cmath>
#include <fstream>

#include "tip/dataset.hpp"

namespace tip::testing {

std::filesystem::path data_dir() { return TIP_TEST_DATA; }

std::filesystem::path d1_manifest() { return data_dir() / "d1" / "manifest.json"; }

const nlohmann::json& d1_golden() {
  static const nlohmann::json golden = [] {
    std::ifstream in(data_dir() / "d1" / "golden.json");
    return nlohmann::json::parse(in);
  }();
  return golden;
}

ProblemInstance d1_instance(Cost budget) {
  return load_instance(d1_manifest(), kD1Lambda, PanelOverArea{kD1Area}, budget);
}

ProblemInstance six_board_instance(Cost budget) {
  ProblemInstance inst;
  const GeoPoint locations[] = {{0, 0},       {1000, 0},    {500, 0},
                                {0, 2000},    {1000, 2000}, {2000, 2000}};
  const double sizes[] = {1, 2, 3, 6, 5, 1};
  for (BillboardId i = 0; i < 6; ++i) {
    inst.billboards.push_back({i, locations[i], sizes[i], static_cast<Cost>(i + 1)});
  }
  inst.trajectories = {
      {0, {{0, 50}, {500, 50}}},
      {1, {{1000, 50}, {500, -50}}},
      {2, {{500, 90}}},
      {3, {{0, 2050}}},
      {4, {{1000, 2080}}},
      {5, {{1000, 1950}, {2000, 2000}}},
  };
  inst.lambda = 100.0;
  inst.model = PanelOverArea{10.0};
  inst.budget = budget;
  inst.validate();
  return inst;
}

ProblemInstance pathological_instance(Cost budget) {
  ProblemInstance inst;
  inst.billboards = {{0, {0, 0}, 1.0, 1}, {1, {10000, 0}, 1.0, 11}};
  inst.trajectories.push_back({0, {{0, 10}}});
  for (TrajectoryId j = 1; j <= 10; ++j) {
    inst.trajectories.push_back({j, {{10000.0, static_cast<double>(j)}}});
  }
  inst.lambda = 50.0;
  inst.model = UniformProbability{1.0};
  inst.budget = budget;
  inst.validate();
  return inst;
}

D2 make_d2(std::uint64_t seed) {
  SyntheticConfig c;
  c.width_km = 4.0;
  c.height_km = 4.0;
  c.billboard_count = 10 + seed % 9;
  c.trajectory_count = 40 + seed % 21;
  c.mean_length_km = 0.4;
  c.max_length_km = 1.5;
  c.step_m = 40.0;
  c.hotspot_count = 4 + seed % 2;
  c.hotspot_spread_m = 120.0;
  c.hotspot_bias = 0.95;
  c.seed = seed;
  const auto data = generate_synthetic(c);

  const ProbabilityModel model =
      seed % 2 ? ProbabilityModel{PanelHalfMax{}} : ProbabilityModel{UniformProbability{0.3}};
  auto inst = data.instance(100.0, model, 0);
  const auto raw = InfluenceIndex::build(inst);
  double top = 0.0;
  for (BillboardId b = 0; b < raw.billboard_count(); ++b) {
    top = std::max(top, raw.standalone_influence(b));
  }
  CostModelParams params;
  params.divisor = top > 0.0 ? top / 4.0 : 1.0;
  params.unit = 1;
  const auto costs = assign_costs(raw, seed, params);
  for (auto& b : inst.billboards) b.cost = costs[b.id];
  auto index = InfluenceIndex::build(inst);
  return {seed, std::move(inst), std::move(index)};
}

std::vector<BillboardSet> all_subsets(const BillboardSet& items) {
  std::vector<BillboardSet> out;
  const std::size_t n = items.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    BillboardSet s;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) s.push_back(items[k]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

BillboardSet random_subset(const BillboardSet& items, std::uint64_t& state, double keep) {
  BillboardSet s;
  for (auto b : items) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    if (static_cast<double>(state >> 11) * 0x1.0p-53 < keep) s.push_back(b);
  }
  return s;
}

int partition_exponent(double theta, std::size_t m) {
  if (theta <= 0.0 || m <= 1) return 0;
  const double e = std::log(static_cast<double>(m)) / std::log(1.0 + 1.0 / theta);
  return static_cast<int>(std::ceil(e - 1e-12));
}

double partition_bound_factor(double theta, std::size_t m) {
  return std::pow(0.5, partition_exponent(theta, m)) * kOneMinusInvE;
}

}  // namespace tip::testing
