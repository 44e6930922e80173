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


// Shared fixtures for the unit and acceptance tests.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "tip/influence_index.hpp"
#include "tip/model.hpp"
#include "tip/partition.hpp"

namespace tip::testing {

std::filesystem::path data_dir();
std::filesystem::path d1_manifest();

// Reference values from tests/oracle/d1_oracle.py.
const nlohmann::json& d1_golden();

inline constexpr double kD1Lambda = 100.0;
inline constexpr double kD1Area = 40.0;

ProblemInstance d1_instance(Cost budget = 0);

// Six billboards b1..b6 (ids 0..5) with cost i+1 and probability size/10,
// laid out so the influence pairs are b1:t1, b2:t2, b3:t1 t2 t3, b4:t4,
// b5:t5 t6, b6:t6.
ProblemInstance six_board_instance(Cost budget = 0);

// Two billboards: b1 reaches one trajectory at cost 1, b2 reaches ten at
// cost 11, probability 1.
ProblemInstance pathological_instance(Cost budget);

struct D2 {
  std::uint64_t seed = 0;
  ProblemInstance instance;
  InfluenceIndex index;
};

// Small synthetic instance: at most 18 billboards and 60 trajectories around
// a few well separated hotspots, integer costs in roughly 1..5.
D2 make_d2(std::uint64_t seed);

inline constexpr Cost kD2Budgets[] = {2, 4, 7, 10};

// Independent subset helpers.
std::vector<BillboardSet> all_subsets(const BillboardSet& items);
BillboardSet random_subset(const BillboardSet& items, std::uint64_t& state, double keep = 0.5);

// ceil(log_{1+1/theta} m); zero when theta is 0 or m <= 1.
int partition_exponent(double theta, std::size_t m);
double partition_bound_factor(double theta, std::size_t m);

inline constexpr double kOneMinusInvE = 0.63212055882855767;

}  // namespace tip::testing
