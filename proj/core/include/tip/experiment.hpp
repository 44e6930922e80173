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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tip/baselines.hpp"
#include "tip/budget_dp.hpp"
#include "tip/dataset.hpp"
#include "tip/partition.hpp"

namespace tip {

inline constexpr std::string_view kAlgorithms[] = {"greedy", "enum",   "partsel", "lazyprobe",
                                                   "topk",   "anneal", "exact"};

bool is_algorithm(std::string_view name);
bool uses_partition(std::string_view name);

struct SolverConfig {
  int tau = 2;
  std::optional<Partition> partition;  // required by partsel and lazyprobe
  std::optional<Cost> quantum;
  AnnealParams anneal;
  std::size_t exact_cap = kDefaultExactCap;
};

struct AlgorithmRun {
  Selection selection;
  double wall_ms = 0.0;
  std::optional<DpSelection> dp;
};

// Runs one solver over the whole universe of `index`.
AlgorithmRun run_algorithm(std::string_view name, const InfluenceIndex& index, Cost budget,
                           const SolverConfig& config);

struct ExperimentSpec {
  std::optional<std::filesystem::path> dataset;  // manifest path
  std::optional<SyntheticConfig> synthetic;
  // Used when the dataset carries no costs.
  std::uint64_t cost_seed = 1;
  CostModelParams cost_model;

  std::vector<Cost> budgets;
  std::vector<double> lambdas;
  std::vector<double> thetas{0.2};
  std::vector<std::string> models;
  std::vector<std::string> algorithms;
  int repetitions = 1;
  int tau = 2;
  OverlapMode partition_mode = OverlapMode::kSingleton;
  std::uint64_t seed = 1;
  AnnealParams anneal;

  // Relative dataset paths resolve against base_dir.
  static ExperimentSpec from_json(std::string_view text,
                                  const std::filesystem::path& base_dir = {});
  void validate() const;
};

struct ExperimentRow {
  std::string algorithm;
  std::string model;
  double lambda = 0.0;
  std::optional<double> theta;
  Cost budget = 0;
  int repetitions = 0;
  // Means over repetitions.
  double influence = 0.0;
  double cost = 0.0;
  double wall_ms = 0.0;
  double enum_calls = 0.0;
  double estimator_calls = 0.0;
  std::vector<std::uint64_t> seeds;  // randomized solvers only
};

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

// The first CSV line is a versioned schema marker.
inline constexpr std::string_view kResultsHeader = "#tip-results,v1";

std::string rows_to_csv(const std::vector<ExperimentRow>& rows, bool include_timing = true);
std::string rows_to_json(const std::vector<ExperimentRow>& rows, bool include_timing = true);

}  // namespace tip
