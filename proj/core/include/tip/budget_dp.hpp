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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tip/partition.hpp"
#include "tip/selectors.hpp"

namespace tip {

// Budget measured in whole quanta: cell l stands for l * quantum currency.
struct BudgetGrid {
  Cost quantum = 1;
  std::int64_t cells = 0;  // budget / quantum

  // gcd of the costs and the budget unless `quantum` is given, in which case
  // it must divide all of them (QuantizationError otherwise).
  static BudgetGrid make(std::span<const Cost> costs, Cost budget,
                         std::optional<Cost> quantum = std::nullopt);

  Cost budget_of(std::int64_t cell) const { return cell * quantum; }
};

// psi[i][q]: the local selection of cluster i under q quanta.
struct LocalSolution {
  double value = 0.0;
  BillboardSet chosen;
};

// Per-cluster callbacks used by the DP engine. Cluster indices are 0-based;
// `exact` backs psi and `upper` backs psi-up.
struct LocalSolver {
  std::function<LocalSolution(std::size_t cluster, std::int64_t cells)> exact;
  std::function<double(std::size_t cluster, std::int64_t cells)> upper;
};

struct LazyDiagnostics {
  std::uint64_t enum_calls = 0;       // distinct psi cells computed
  std::uint64_t estimator_calls = 0;  // distinct psi-up cells computed
  std::uint64_t pruned_cells = 0;     // (i, l, q) comparisons settled by the bound
};

// Filled DP tables. Row i of theta covers the first i clusters (row 0 is all
// zeros); psi/psi_upper rows are 0-based cluster indices and hold nullopt for
// cells that were never computed.
struct DpTables {
  std::int64_t cells = 0;
  std::vector<std::vector<double>> theta;
  std::vector<std::vector<std::int64_t>> choice;  // q achieving theta[i][l]
  std::vector<std::vector<std::optional<LocalSolution>>> psi;
  std::vector<std::vector<std::optional<double>>> psi_upper;
  LazyDiagnostics diagnostics;

  double value() const { return theta.back().back(); }
  // Union of the per-cluster selections along the traceback from (m, cells),
  // plus the per-cluster quanta assigned.
  BillboardSet traceback(std::vector<std::int64_t>* quanta = nullptr) const;
};

// theta[i][l] = max over 0 <= q <= l of theta[i-1][l-q] + psi[i][q]; the
// smallest maximizing q wins ties.
DpTables partition_dp(std::size_t clusters, std::int64_t cells, const LocalSolver& solver);

// Same recursion, but psi[i][q] is only computed when theta[i-1][l-q] plus
// the bound psi-up[i][q] could beat the current lower bound for theta[i][l].
// A psi cell already computed for a smaller l is reused directly.
DpTables lazy_probe_dp(std::size_t clusters, std::int64_t cells, const LocalSolver& solver);

struct DpOptions {
  int tau = 2;
  std::optional<Cost> quantum;
};

struct DpSelection {
  Selection selection;      // influence recomputed exactly over the union
  double dp_value = 0.0;    // theta[m][L], ignores cross-cluster overlap
  BudgetGrid grid;
  std::vector<std::int64_t> cluster_quanta;  // budget cells assigned per cluster
  DpTables tables;
};

// PartSel: enum_sel on every (cluster, budget) cell, then the DP.
DpSelection part_sel(const InfluenceIndex& index, const Partition& partition, Cost budget,
                     const DpOptions& options = {});

// LazyProbe: psi cells guarded by estimate_bound.
DpSelection lazy_probe(const InfluenceIndex& index, const Partition& partition, Cost budget,
                       const DpOptions& options = {});

// JSON dump of psi, psi-up, theta, choices and the traceback.
std::string dp_tables_to_json(const DpTables& tables, const BudgetGrid& grid);

}  // namespace tip
