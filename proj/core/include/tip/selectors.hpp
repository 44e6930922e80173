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

#include "tip/influence_index.hpp"

namespace tip {

struct SelectionDiagnostics {
  std::uint64_t marginal_evaluations = 0;
  std::uint64_t enumerated_sets = 0;  // feasible sets examined by enum_sel
  std::uint64_t enum_calls = 0;       // enum_sel invocations (DP selectors)
  std::uint64_t estimator_calls = 0;  // estimate_bound invocations (DP selectors)
  std::uint64_t pruned_cells = 0;     // lazy probe comparisons that skipped enum_sel
};

struct Selection {
  BillboardSet chosen;
  Cost cost = 0;
  double influence = 0.0;
  SelectionDiagnostics diagnostics;
};

struct UpperBound {
  double value = 0.0;
  BillboardSet greedy_set;
  std::optional<BillboardId> k_plus_one;
};

// Cost-effective greedy with the best-single-billboard fallback. Candidates
// are added by largest marginal/cost (ties: smaller id) while any remains
// affordable; the greedy set is replaced by the best affordable singleton
// only if that singleton is strictly more influential.
Selection greedy_sel(const InfluenceIndex& index, std::span<const BillboardId> candidates,
                     Cost budget);

// Enumeration greedy: best feasible set of size <= tau, versus every feasible
// (tau+1)-set greedily extended under the remaining budget. Ties go to the
// first phase, then to the lexicographically smaller set. Cost grows as
// |C|^(tau+3); tau >= 3 is allowed but rarely practical.
Selection enum_sel(const InfluenceIndex& index, std::span<const BillboardId> candidates,
                   Cost budget, int tau = 2);

// Greedy-derived estimate I(S') + (L - cost(S')) * M_{k+1}, where S' is the
// prefix picked by argmax unit marginal over all remaining candidates before
// the first pick that would overrun L, and M_{k+1} is that pick's unit
// marginal. When nothing overruns the budget the value is exactly I(S').
UpperBound estimate_bound(const InfluenceIndex& index, std::span<const BillboardId> candidates,
                          Cost budget);

namespace detail {

// Alg. 1 main loop on top of an existing cache: keeps adding the best
// affordable candidate until none fits. Returns the number of marginal
// evaluations.
std::uint64_t greedy_extend(SurvivalCache& cache, std::span<const BillboardId> candidates,
                            Cost budget);

// Strictly better unit marginal, with a relative tolerance so that values
// differing only by rounding compare as ties. Zero-cost billboards rank above
// every positive-cost one.
bool better_unit_gain(double gain_a, Cost cost_a, double gain_b, Cost cost_b);

// a > b beyond rounding noise.
bool definitely_greater(double a, double b);

}  // namespace detail

}  // namespace tip
