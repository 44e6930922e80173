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
#include <string>
#include <string_view>
#include <vector>

#include "tip/influence_index.hpp"
#include "tip/partition.hpp"

namespace tip {

// {"version":1,"theta":..,"mode":..,"clusters":[[ids..],..]}
std::string partition_to_json(const Partition& partition);
Partition partition_from_json(std::string_view text);

struct ResultRecord {
  std::string algorithm;
  Cost budget = 0;
  double lambda = 0.0;
  std::optional<double> theta;
  std::vector<std::int64_t> chosen_ids;
  Cost cost = 0;
  double influence = 0.0;
  double wall_ms = 0.0;
  std::uint64_t enum_calls = 0;
  std::uint64_t estimator_calls = 0;
};

// With include_timing false, wall_ms is written as 0 so that repeated runs
// are byte-identical.
std::string result_to_json(const ResultRecord& record, bool include_timing = true);

struct IndexFile {
  InfluenceIndex index;
  double lambda = 0.0;
  ProbabilityModel model;
};

std::string index_to_json(const InfluenceIndex& index, double lambda,
                          const ProbabilityModel& model);
IndexFile index_from_json(std::string_view text);

}  // namespace tip
