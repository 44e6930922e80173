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

#include "tip/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tip/errors.hpp"

namespace tip {

namespace detail {

bool definitely_greater(double a, double b) {
  return a > b + 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool better_unit_gain(double gain_a, Cost cost_a, double gain_b, Cost cost_b) {
  if (cost_a == 0 || cost_b == 0) {
    if (cost_a != 0) return false;
    if (cost_b != 0) return true;
    return gain_a > gain_b + 1e-12 * std::max(std::abs(gain_a), std::abs(gain_b));
  }
  const double ua = gain_a / static_cast<double>(cost_a);
  const double ub = gain_b / static_cast<double>(cost_b);
  return ua > ub + 1e-12 * std::max(std::abs(ua), std::abs(ub));
}

std::uint64_t greedy_extend(SurvivalCache& cache, std::span<const BillboardId> candidates,
                            Cost budget) {
  const auto& index = cache.index();
  std::uint64_t evaluations = 0;
  for (;;) {
    const Cost remaining = budget - cache.cost();
    std::optional<BillboardId> best;
    double best_gain = 0.0;
    Cost best_cost = 0;
    for (auto b : candidates) {
      if (cache.contains(b)) continue;
      const Cost c = index.cost(b);
      if (c > remaining) continue;
      const double gain = cache.marginal(b);
      ++evaluations;
      if (!best || better_unit_gain(gain, c, best_gain, best_cost)) {
        best = b;
        best_gain = gain;
        best_cost = c;
      }
    }
    if (!best) break;
    cache.commit(*best);
  }
  return evaluations;
}

}  // namespace detail

namespace {

BillboardSet checked_candidates(const InfluenceIndex& index,
                                std::span<const BillboardId> candidates, Cost budget) {
  if (budget < 0) throw ConfigError("budget must be non-negative");
  auto set = make_set(candidates);
  for (auto b : set) index.check_id(b);
  return set;
}

// Calls fn(combo) for every size-r subset of `items` whose cost fits the
// budget, in lexicographic order.
void for_each_feasible_combination(const InfluenceIndex& index, const BillboardSet& items,
                                   std::size_t r, Cost budget,
                                   const std::function<void(const BillboardSet&)>& fn) {
  BillboardSet combo;
  combo.reserve(r);
  std::function<void(std::size_t, Cost)> rec = [&](std::size_t start, Cost spent) {
    if (combo.size() == r) {
      fn(combo);
      return;
    }
    const std::size_t need = r - combo.size();
    for (std::size_t k = start; k + need <= items.size(); ++k) {
      const Cost c = spent + index.cost(items[k]);
      if (c > budget) continue;
      combo.push_back(items[k]);
      rec(k + 1, c);
      combo.pop_back();
    }
  };
  rec(0, 0);
}

// Replace (best, best_value) by (set, value) if value is larger, or tied and
// the set is lexicographically smaller.
void keep_best(BillboardSet& best, double& best_value, const BillboardSet& set, double value) {
  if (detail::definitely_greater(value, best_value) ||
      (!detail::definitely_greater(best_value, value) &&
       std::lexicographical_compare(set.begin(), set.end(), best.begin(), best.end()))) {
    best = set;
    best_value = value;
  }
}

Selection finish(const InfluenceIndex& index, BillboardSet chosen, SelectionDiagnostics diag) {
  Selection s;
  s.cost = index.total_cost(chosen);
  s.influence = index.influence(chosen);
  s.chosen = std::move(chosen);
  s.diagnostics = diag;
  return s;
}

}  // namespace

Selection greedy_sel(const InfluenceIndex& index, std::span<const BillboardId> candidates,
                     Cost budget) {
  const auto pool = checked_candidates(index, candidates, budget);
  SelectionDiagnostics diag;

  SurvivalCache cache(index);
  diag.marginal_evaluations = detail::greedy_extend(cache, pool, budget);
  auto greedy_set = cache.members_sorted();
  const double greedy_value = index.influence(greedy_set);

  std::optional<BillboardId> single;
  double single_value = 0.0;
  for (auto b : pool) {
    if (index.cost(b) > budget) continue;
    const double v = index.standalone_influence(b);
    if (!single || detail::definitely_greater(v, single_value)) {
      single = b;
      single_value = v;
    }
  }
  if (single && detail::definitely_greater(single_value, greedy_value)) {
    return finish(index, {*single}, diag);
  }
  return finish(index, std::move(greedy_set), diag);
}

Selection enum_sel(const InfluenceIndex& index, std::span<const BillboardId> candidates,
                   Cost budget, int tau) {
  if (tau < 1) throw ConfigError("tau must be at least 1");
  const auto pool = checked_candidates(index, candidates, budget);
  SelectionDiagnostics diag;

  BillboardSet small_best;
  double small_value = 0.0;
  for (std::size_t r = 1; r <= static_cast<std::size_t>(tau) && r <= pool.size(); ++r) {
    for_each_feasible_combination(index, pool, r, budget, [&](const BillboardSet& combo) {
      ++diag.enumerated_sets;
      keep_best(small_best, small_value, combo, index.influence(combo));
    });
  }

  BillboardSet extended_best;
  double extended_value = -1.0;
  SurvivalCache cache(index);
  const auto seed_size = static_cast<std::size_t>(tau) + 1;
  if (seed_size <= pool.size()) {
    for_each_feasible_combination(index, pool, seed_size, budget, [&](const BillboardSet& combo) {
      ++diag.enumerated_sets;
      cache.reset();
      for (auto b : combo) cache.commit(b);
      diag.marginal_evaluations += detail::greedy_extend(cache, pool, budget);
      keep_best(extended_best, extended_value, cache.members_sorted(), cache.total());
    });
  }

  if (extended_value >= 0.0 && detail::definitely_greater(extended_value, small_value)) {
    return finish(index, std::move(extended_best), diag);
  }
  return finish(index, std::move(small_best), diag);
}

UpperBound estimate_bound(const InfluenceIndex& index, std::span<const BillboardId> candidates,
                          Cost budget) {
  const auto pool = checked_candidates(index, candidates, budget);
  SurvivalCache cache(index);
  UpperBound out;
  for (;;) {
    std::optional<BillboardId> best;
    double best_gain = 0.0;
    Cost best_cost = 0;
    for (auto b : pool) {
      if (cache.contains(b)) continue;
      const double gain = cache.marginal(b);
      const Cost c = index.cost(b);
      if (!best || detail::better_unit_gain(gain, c, best_gain, best_cost)) {
        best = b;
        best_gain = gain;
        best_cost = c;
      }
    }
    if (!best) {
      out.value = cache.total();
      break;
    }
    const Cost remaining = budget - cache.cost();
    if (best_cost > remaining) {
      // best_cost > remaining >= 0, so the division is safe.
      out.value = cache.total() + static_cast<double>(remaining) * best_gain /
                                      static_cast<double>(best_cost);
      out.k_plus_one = best;
      break;
    }
    cache.commit(*best);
  }
  out.greedy_set = cache.members_sorted();
  return out;
}

}  // namespace tip
