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

#include "tip/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "tip/errors.hpp"
#include "tip/rng.hpp"

namespace tip {

namespace {

BillboardSet checked_pool(const InfluenceIndex& index, std::span<const BillboardId> universe,
                          Cost budget) {
  if (budget < 0) throw ConfigError("budget must be non-negative");
  auto pool = make_set(universe);
  for (auto b : pool) index.check_id(b);
  return pool;
}

Selection make_selection(const InfluenceIndex& index, BillboardSet chosen) {
  Selection s;
  s.cost = index.total_cost(chosen);
  s.influence = index.influence(chosen);
  s.chosen = std::move(chosen);
  return s;
}

bool lex_less(const BillboardSet& a, const BillboardSet& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Preorder subset walk with include-first branching, which visits sets in
// lexicographic order. Survival products are undone on the way back up.
class SubsetWalk {
 public:
  SubsetWalk(const InfluenceIndex& index, BillboardSet items, Cost budget)
      : index_(index),
        items_(std::move(items)),
        budget_(budget),
        survival_(index.trajectory_count(), 1.0) {}

  // visit(current set, influence, cost); prune(k) may cut the subtree that
  // extends the current set with items_[k..].
  template <class Visit, class Prune>
  void run(Visit&& visit, Prune&& prune) {
    visit(current_, value_, cost_);
    descend(0, visit, prune);
  }

  // Sum of positive marginals of affordable items from position k on.
  double optimistic_gain(std::size_t k) const {
    double gain = 0.0;
    for (std::size_t j = k; j < items_.size(); ++j) {
      if (cost_ + index_.cost(items_[j]) > budget_) continue;
      for (const auto& e : index_.forward(items_[j])) gain += survival_[e.id] * e.probability;
    }
    return gain;
  }

  double value() const { return value_; }

 private:
  template <class Visit, class Prune>
  void descend(std::size_t k, Visit& visit, Prune& prune) {
    if (prune(*this, k)) return;
    for (std::size_t j = k; j < items_.size(); ++j) {
      const auto b = items_[j];
      const Cost c = index_.cost(b);
      if (cost_ + c > budget_) continue;
      const auto mark = undo_.size();
      double gain = 0.0;
      for (const auto& e : index_.forward(b)) {
        undo_.push_back({e.id, survival_[e.id]});
        gain += survival_[e.id] * e.probability;
        survival_[e.id] *= 1.0 - e.probability;
      }
      const double saved = value_;
      value_ += gain;
      cost_ += c;
      current_.push_back(b);
      visit(current_, value_, cost_);
      descend(j + 1, visit, prune);
      current_.pop_back();
      cost_ -= c;
      value_ = saved;
      while (undo_.size() > mark) {
        survival_[undo_.back().first] = undo_.back().second;
        undo_.pop_back();
      }
    }
  }

  const InfluenceIndex& index_;
  BillboardSet items_;
  Cost budget_;
  std::vector<double> survival_;
  std::vector<std::pair<TrajectoryId, double>> undo_;
  BillboardSet current_;
  double value_ = 0.0;
  Cost cost_ = 0;
};

}  // namespace

Selection top_k(const InfluenceIndex& index, std::span<const BillboardId> universe, Cost budget) {
  auto order = checked_pool(index, universe, budget);
  std::stable_sort(order.begin(), order.end(), [&](BillboardId a, BillboardId b) {
    return index.forward(a).size() > index.forward(b).size();
  });
  BillboardSet chosen;
  Cost spent = 0;
  for (auto b : order) {
    if (spent + index.cost(b) > budget) continue;
    spent += index.cost(b);
    chosen.push_back(b);
  }
  return make_selection(index, make_set(chosen));
}

Selection exact_opt(const InfluenceIndex& index, std::span<const BillboardId> universe,
                    Cost budget, std::size_t cap) {
  auto pool = checked_pool(index, universe, budget);
  if (pool.size() > cap) {
    throw CapacityError("exact oracle limited to " + std::to_string(cap) + " billboards, got " +
                        std::to_string(pool.size()));
  }
  BillboardSet best;
  double best_value = 0.0;
  std::uint64_t visited = 0;
  SubsetWalk walk(index, std::move(pool), budget);
  walk.run(
      [&](const BillboardSet& set, double value, Cost) {
        ++visited;
        // Later sets are lexicographically larger, so only strict gains count.
        if (detail::definitely_greater(value, best_value)) {
          best = set;
          best_value = value;
        }
      },
      [&](const SubsetWalk& w, std::size_t k) {
        return w.value() + w.optimistic_gain(k) <= best_value;
      });
  auto s = make_selection(index, std::move(best));
  s.diagnostics.enumerated_sets = visited;
  return s;
}

std::vector<Selection> exact_opt_curve(const InfluenceIndex& index,
                                       std::span<const BillboardId> universe, Cost max_budget,
                                       std::size_t cap) {
  auto pool = checked_pool(index, universe, max_budget);
  if (pool.size() > cap) {
    throw CapacityError("exact oracle limited to " + std::to_string(cap) + " billboards");
  }
  const auto n = static_cast<std::size_t>(max_budget) + 1;
  std::vector<BillboardSet> at_cost(n);
  std::vector<double> at_cost_value(n, -1.0);
  SubsetWalk walk(index, std::move(pool), max_budget);
  walk.run(
      [&](const BillboardSet& set, double value, Cost cost) {
        auto& v = at_cost_value[cost];
        if (v < 0.0 || detail::definitely_greater(value, v)) {
          at_cost[cost] = set;
          v = value;
        }
      },
      [](const SubsetWalk&, std::size_t) { return false; });

  std::vector<Selection> curve;
  curve.reserve(n);
  BillboardSet best;
  double best_value = -1.0;
  for (std::size_t c = 0; c < n; ++c) {
    const double v = at_cost_value[c];
    if (v >= 0.0) {
      const bool tie = !detail::definitely_greater(v, best_value) &&
                       !detail::definitely_greater(best_value, v);
      if (detail::definitely_greater(v, best_value) || (tie && lex_less(at_cost[c], best))) {
        best = at_cost[c];
        best_value = v;
      }
    }
    curve.push_back(make_selection(index, best));
  }
  return curve;
}

void AnnealParams::validate() const {
  if (initial_temperature && !(*initial_temperature > 0.0)) {
    throw ConfigError("initial temperature must be positive");
  }
  if (!(cooling > 0.0 && cooling < 1.0)) throw ConfigError("cooling factor must be in (0, 1)");
  if (iterations_per_level < 0) throw ConfigError("iterations per level must be non-negative");
  if (restarts < 1) throw ConfigError("restart count must be positive");
  if (!(min_temperature_ratio > 0.0 && min_temperature_ratio < 1.0)) {
    throw ConfigError("minimum temperature ratio must be in (0, 1)");
  }
}

namespace {

struct AnnealRun {
  BillboardSet best;
  double best_value = 0.0;
};

AnnealRun anneal_once(const InfluenceIndex& index, const BillboardSet& pool, Cost budget,
                      const AnnealParams& params, double t0, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = pool.size();
  std::vector<char> in(n, 0);
  Cost cost = 0;

  // Random feasible start: shuffled first-fit.
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  for (std::size_t k = n; k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);
  for (auto k : order) {
    if (cost + index.cost(pool[k]) <= budget) {
      in[k] = 1;
      cost += index.cost(pool[k]);
    }
  }
  auto members = [&] {
    BillboardSet s;
    for (std::size_t k = 0; k < n; ++k) {
      if (in[k]) s.push_back(pool[k]);
    }
    return s;
  };

  double value = index.influence(members());
  AnnealRun run{members(), value};
  if (params.iterations_per_level == 0 || n == 0) return run;

  std::vector<std::size_t> inside;
  std::vector<std::size_t> outside;
  for (double t = t0; t >= t0 * params.min_temperature_ratio; t *= params.cooling) {
    for (int it = 0; it < params.iterations_per_level; ++it) {
      inside.clear();
      for (std::size_t k = 0; k < n; ++k) {
        if (in[k]) inside.push_back(k);
      }
      std::optional<std::size_t> drop;
      std::optional<std::size_t> add;
      const auto move = rng.below(3);
      if (move != 0) {
        if (inside.empty()) continue;
        drop = inside[rng.below(inside.size())];
      }
      if (move != 1) {
        const Cost room = budget - cost + (drop ? index.cost(pool[*drop]) : 0);
        outside.clear();
        for (std::size_t k = 0; k < n; ++k) {
          if (!in[k] && index.cost(pool[k]) <= room) outside.push_back(k);
        }
        if (outside.empty()) continue;
        add = outside[rng.below(outside.size())];
      }

      if (drop) in[*drop] = 0;
      if (add) in[*add] = 1;
      const auto proposal = members();
      const double next = index.influence(proposal);
      const double delta = next - value;
      if (delta >= 0.0 || rng.uniform() < std::exp(delta / t)) {
        value = next;
        if (drop) cost -= index.cost(pool[*drop]);
        if (add) cost += index.cost(pool[*add]);
        if (detail::definitely_greater(value, run.best_value)) {
          run.best = proposal;
          run.best_value = value;
        }
      } else {
        if (drop) in[*drop] = 1;
        if (add) in[*add] = 0;
      }
    }
  }
  return run;
}

}  // namespace

Selection simulated_annealing(const InfluenceIndex& index, std::span<const BillboardId> universe,
                              Cost budget, const AnnealParams& params) {
  params.validate();
  const auto pool = checked_pool(index, universe, budget);
  double t0 = 0.0;
  if (params.initial_temperature) {
    t0 = *params.initial_temperature;
  } else {
    t0 = std::max(top_k(index, pool, budget).influence / 10.0, 1e-6);
  }

  std::vector<std::future<AnnealRun>> runs;
  runs.reserve(static_cast<std::size_t>(params.restarts));
  for (int r = 0; r < params.restarts; ++r) {
    runs.push_back(std::async(std::launch::async, anneal_once, std::cref(index), std::cref(pool),
                              budget, std::cref(params), t0,
                              Rng::derive(params.seed, static_cast<std::uint64_t>(r))));
  }
  AnnealRun best{{}, -1.0};
  for (auto& f : runs) {
    auto run = f.get();
    const bool tie = !detail::definitely_greater(run.best_value, best.best_value) &&
                     !detail::definitely_greater(best.best_value, run.best_value);
    if (detail::definitely_greater(run.best_value, best.best_value) ||
        (tie && lex_less(run.best, best.best))) {
      best = std::move(run);
    }
  }
  return make_selection(index, std::move(best.best));
}

}  // namespace tip
