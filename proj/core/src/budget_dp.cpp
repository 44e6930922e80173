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

#include "tip/budget_dp.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "json.hpp"
#include "tip/errors.hpp"

namespace tip {

namespace {

struct Engine {
  Engine(std::size_t m, std::int64_t cells, const LocalSolver& solver) : solver(solver) {
    tables.cells = cells;
    tables.theta.assign(m + 1, std::vector<double>(cells + 1, 0.0));
    tables.choice.assign(m + 1, std::vector<std::int64_t>(cells + 1, 0));
    tables.psi.assign(m, std::vector<std::optional<LocalSolution>>(cells + 1));
    tables.psi_upper.assign(m, std::vector<std::optional<double>>(cells + 1));
  }

  const LocalSolution& psi(std::size_t i, std::int64_t q) {
    auto& cell = tables.psi[i][q];
    if (!cell) {
      cell = solver.exact(i, q);
      ++tables.diagnostics.enum_calls;
    }
    return *cell;
  }

  double psi_upper(std::size_t i, std::int64_t q) {
    auto& cell = tables.psi_upper[i][q];
    if (!cell) {
      cell = solver.upper(i, q);
      ++tables.diagnostics.estimator_calls;
    }
    return *cell;
  }

  const LocalSolver& solver;
  DpTables tables;
};

void check_solver(const LocalSolver& solver, bool needs_upper) {
  if (!solver.exact || (needs_upper && !solver.upper)) {
    throw ConfigError("local solver callbacks are missing");
  }
}

void check_structure(const InfluenceIndex& index, const Partition& partition) {
  std::vector<char> seen(index.billboard_count(), 0);
  for (const auto& c : partition.clusters) {
    if (c.members.empty()) throw PartitionError("empty cluster in partition");
    for (auto b : c.members) {
      index.check_id(b);
      if (seen[b]) throw PartitionError("billboard " + std::to_string(b) + " in two clusters");
      seen[b] = 1;
    }
  }
}

DpSelection run(const InfluenceIndex& index, const Partition& partition, Cost budget,
                const DpOptions& options, bool lazy) {
  if (budget < 0) throw ConfigError("budget must be non-negative");
  if (options.tau < 1) throw ConfigError("tau must be at least 1");
  check_structure(index, partition);

  std::vector<Cost> costs;
  for (const auto& c : partition.clusters) {
    for (auto b : c.members) costs.push_back(index.cost(b));
  }
  const auto grid = BudgetGrid::make(costs, budget, options.quantum);

  std::uint64_t enum_calls = 0;
  std::uint64_t estimator_calls = 0;
  SelectionDiagnostics inner;
  const auto& clusters = partition.clusters;
  LocalSolver solver;
  solver.exact = [&](std::size_t i, std::int64_t q) {
    const auto& members = clusters[i].members;
    const bool free_member = std::any_of(members.begin(), members.end(),
                                         [&](BillboardId b) { return index.cost(b) == 0; });
    if (q == 0 && !free_member) return LocalSolution{};
    ++enum_calls;
    auto s = enum_sel(index, members, grid.budget_of(q), options.tau);
    inner.enumerated_sets += s.diagnostics.enumerated_sets;
    inner.marginal_evaluations += s.diagnostics.marginal_evaluations;
    return LocalSolution{s.influence, std::move(s.chosen)};
  };
  solver.upper = [&](std::size_t i, std::int64_t q) {
    ++estimator_calls;
    return estimate_bound(index, clusters[i].members, grid.budget_of(q)).value;
  };

  DpSelection out;
  out.grid = grid;
  out.tables = lazy ? lazy_probe_dp(clusters.size(), grid.cells, solver)
                    : partition_dp(clusters.size(), grid.cells, solver);
  out.dp_value = clusters.empty() ? 0.0 : out.tables.value();
  auto chosen = out.tables.traceback(&out.cluster_quanta);

  auto& sel = out.selection;
  sel.cost = index.total_cost(chosen);
  sel.influence = index.influence(chosen);
  sel.chosen = std::move(chosen);
  sel.diagnostics = inner;
  sel.diagnostics.enum_calls = enum_calls;
  sel.diagnostics.estimator_calls = estimator_calls;
  sel.diagnostics.pruned_cells = out.tables.diagnostics.pruned_cells;
  return out;
}

}  // namespace

BudgetGrid BudgetGrid::make(std::span<const Cost> costs, Cost budget,
                            std::optional<Cost> quantum) {
  if (budget < 0) throw ConfigError("budget must be non-negative");
  BudgetGrid grid;
  if (quantum) {
    if (*quantum <= 0) throw QuantizationError("budget quantum must be positive");
    for (Cost c : costs) {
      if (c % *quantum != 0) {
        throw QuantizationError("cost " + std::to_string(c) + " is not a multiple of quantum " +
                                std::to_string(*quantum));
      }
    }
    if (budget % *quantum != 0) {
      throw QuantizationError("budget is not a multiple of quantum " + std::to_string(*quantum));
    }
    grid.quantum = *quantum;
  } else {
    Cost g = budget;
    for (Cost c : costs) g = std::gcd(g, c);
    grid.quantum = g > 0 ? g : 1;
  }
  grid.cells = budget / grid.quantum;
  return grid;
}

BillboardSet DpTables::traceback(std::vector<std::int64_t>* quanta) const {
  const std::size_t m = psi.size();
  if (quanta) quanta->assign(m, 0);
  BillboardSet chosen;
  std::int64_t l = cells;
  for (std::size_t i = m; i >= 1; --i) {
    const auto q = choice[i][l];
    if (quanta) (*quanta)[i - 1] = q;
    if (const auto& cell = psi[i - 1][q]) {
      chosen.insert(chosen.end(), cell->chosen.begin(), cell->chosen.end());
    }
    l -= q;
  }
  return make_set(chosen);
}

DpTables partition_dp(std::size_t clusters, std::int64_t cells, const LocalSolver& solver) {
  check_solver(solver, false);
  Engine e(clusters, cells, solver);
  auto& theta = e.tables.theta;
  for (std::size_t i = 1; i <= clusters; ++i) {
    for (std::int64_t l = 0; l <= cells; ++l) {
      double best = theta[i - 1][l] + e.psi(i - 1, 0).value;
      std::int64_t arg = 0;
      for (std::int64_t q = 1; q <= l; ++q) {
        const double cand = theta[i - 1][l - q] + e.psi(i - 1, q).value;
        if (detail::definitely_greater(cand, best)) {
          best = cand;
          arg = q;
        }
      }
      theta[i][l] = best;
      e.tables.choice[i][l] = arg;
    }
  }
  return std::move(e.tables);
}

DpTables lazy_probe_dp(std::size_t clusters, std::int64_t cells, const LocalSolver& solver) {
  check_solver(solver, true);
  Engine e(clusters, cells, solver);
  auto& theta = e.tables.theta;
  for (std::size_t i = 1; i <= clusters; ++i) {
    for (std::int64_t l = 0; l <= cells; ++l) {
      // Lower bound from q = 0.
      double lower = theta[i - 1][l] + e.psi(i - 1, 0).value;
      std::int64_t arg = 0;
      for (std::int64_t q = 1; q <= l; ++q) {
        const double base = theta[i - 1][l - q];
        const auto& known = e.tables.psi[i - 1][q];
        if (!known && !(lower < base + e.psi_upper(i - 1, q))) {
          ++e.tables.diagnostics.pruned_cells;
          continue;
        }
        const double cand = base + e.psi(i - 1, q).value;
        if (detail::definitely_greater(cand, lower)) {
          lower = cand;
          arg = q;
        }
      }
      theta[i][l] = lower;
      e.tables.choice[i][l] = arg;
    }
  }
  return std::move(e.tables);
}

DpSelection part_sel(const InfluenceIndex& index, const Partition& partition, Cost budget,
                     const DpOptions& options) {
  return run(index, partition, budget, options, false);
}

DpSelection lazy_probe(const InfluenceIndex& index, const Partition& partition, Cost budget,
                       const DpOptions& options) {
  return run(index, partition, budget, options, true);
}

std::string dp_tables_to_json(const DpTables& tables, const BudgetGrid& grid) {
  using nlohmann::json;
  json psi = json::array();
  json psi_upper = json::array();
  json psi_sets = json::array();
  for (std::size_t i = 0; i < tables.psi.size(); ++i) {
    json row = json::array();
    json up = json::array();
    json sets = json::array();
    for (std::size_t q = 0; q < tables.psi[i].size(); ++q) {
      const auto& cell = tables.psi[i][q];
      row.push_back(cell ? json(cell->value) : json(nullptr));
      sets.push_back(cell ? json(cell->chosen) : json(nullptr));
      const auto& u = tables.psi_upper[i][q];
      up.push_back(u ? json(*u) : json(nullptr));
    }
    psi.push_back(std::move(row));
    psi_upper.push_back(std::move(up));
    psi_sets.push_back(std::move(sets));
  }
  std::vector<std::int64_t> quanta;
  const auto chosen = tables.psi.empty() ? BillboardSet{} : tables.traceback(&quanta);
  json doc = {
      {"version", 1},
      {"quantum", grid.quantum},
      {"cells", tables.cells},
      {"psi", psi},
      {"psi_sets", psi_sets},
      {"psi_upper", psi_upper},
      {"theta", tables.theta},
      {"choice", tables.choice},
      {"traceback", {{"cluster_quanta", quanta}, {"chosen_ids", chosen}}},
      {"diagnostics",
       {{"enum_calls", tables.diagnostics.enum_calls},
        {"estimator_calls", tables.diagnostics.estimator_calls},
        {"pruned_cells", tables.diagnostics.pruned_cells}}},
  };
  return doc.dump(2);
}

}  // namespace tip
