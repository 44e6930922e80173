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
#include <variant>
#include <vector>

#include "tip/geometry.hpp"

namespace tip {

using BillboardId = std::uint32_t;
using TrajectoryId = std::uint32_t;
// Leasing cost in integer currency units.
using Cost = std::int64_t;

// Sorted, duplicate-free list of billboard ids.
using BillboardSet = std::vector<BillboardId>;

struct Billboard {
  BillboardId id = 0;
  GeoPoint location;
  double panel_size = 1.0;  // square meters
  Cost cost = 0;
};

struct Trajectory {
  TrajectoryId id = 0;
  std::vector<GeoPoint> points;
};

// pr(b, t) = p for every meeting pair.
struct UniformProbability {
  double p = 0.1;
};

// pr(b, t) = size(b) / A, with A larger than every panel in the universe.
struct PanelOverArea {
  double area = 1.0;
};

// pr(b, t) = size(b) / (2 * max panel size in the universe).
struct PanelHalfMax {};

using ProbabilityModel = std::variant<UniformProbability, PanelOverArea, PanelHalfMax>;

// Accepts "uniform:<p>", "panel:<A>" and "panel-half".
ProbabilityModel parse_probability_model(std::string_view text);
std::string to_string(const ProbabilityModel& model);

// Throws ConfigError when the model cannot produce probabilities in [0, 1]
// for this universe.
void validate_model(const ProbabilityModel& model, std::span<const Billboard> universe);

double max_panel_size(std::span<const Billboard> universe);

// Probability that b influences a trajectory it meets.
double meet_probability(const ProbabilityModel& model, const Billboard& b,
                        double max_panel);

struct ProblemInstance {
  std::vector<Billboard> billboards;  // billboards[i].id == i
  std::vector<Trajectory> trajectories;  // trajectories[j].id == j
  double lambda = 100.0;  // meters
  ProbabilityModel model = UniformProbability{};
  Cost budget = 0;

  // Checks dense ids, non-empty trajectories, finite coordinates, positive
  // lambda, non-negative costs and budget, and the probability model.
  void validate() const;
};

// True iff some point of t lies within lambda of b (boundary inclusive).
bool influences(const Billboard& b, const Trajectory& t, double lambda);

// pr(b, t): zero for non-meeting pairs, otherwise the model probability.
double pair_probability(const ProblemInstance& instance, const Billboard& b,
                        const Trajectory& t);

// 1 - prod(1 - p_i); zero for an empty input.
double set_probability(std::span<const double> pairwise);

// Reference evaluator: scans every trajectory point for every member of S.
// Unknown ids throw UnknownIdError.
double influence_naive(const ProblemInstance& instance, std::span<const BillboardId> set);

// Sorts and deduplicates.
BillboardSet make_set(std::span<const BillboardId> ids);

}  // namespace tip
