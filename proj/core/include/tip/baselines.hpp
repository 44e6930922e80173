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
#include <optional>
#include <span>
#include <vector>

#include "tip/selectors.hpp"

namespace tip {

// Rank by number of influenced trajectories (descending, ties: smaller id),
// then take every billboard that still fits the budget in that order.
Selection top_k(const InfluenceIndex& index, std::span<const BillboardId> universe, Cost budget);

inline constexpr std::size_t kDefaultExactCap = 20;

// Exhaustive search for the most influential feasible set (ties: the
// lexicographically smallest). Refuses universes larger than `cap` with
// CapacityError.
Selection exact_opt(const InfluenceIndex& index, std::span<const BillboardId> universe,
                    Cost budget, std::size_t cap = kDefaultExactCap);

// OPT(L) for every L in 0..max_budget from a single subset sweep. Entry L is
// the best feasible set with cost <= L.
std::vector<Selection> exact_opt_curve(const InfluenceIndex& index,
                                       std::span<const BillboardId> universe, Cost max_budget,
                                       std::size_t cap = kDefaultExactCap);

struct AnnealParams {
  // Unset: a tenth of the top_k influence.
  std::optional<double> initial_temperature;
  double cooling = 0.95;
  int iterations_per_level = 200;
  int restarts = 10;
  // Cooling stops once T falls below initial_temperature * this ratio.
  double min_temperature_ratio = 1e-3;
  std::uint64_t seed = 1;

  void validate() const;
};

// Seeded simulated annealing over feasible sets with add / remove / swap
// moves; the best set seen across all restarts is returned.
Selection simulated_annealing(const InfluenceIndex& index, std::span<const BillboardId> universe,
                              Cost budget, const AnnealParams& params = {});

}  // namespace tip
