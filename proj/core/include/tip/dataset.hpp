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

#include "tip/influence_index.hpp"
#include "tip/model.hpp"

namespace tip {

enum class CoordinateKind { kLatLng, kPlanar };

std::string_view to_string(CoordinateKind kind);
CoordinateKind parse_coordinate_kind(std::string_view text);

struct DatasetManifest {
  int version = 1;
  // Relative paths resolve against the manifest's directory.
  std::string billboards = "billboards.csv";
  std::string trajectories = "trajectories.jsonl";
  CoordinateKind coordinates = CoordinateKind::kLatLng;
  // Unset: mean billboard position.
  std::optional<double> ref_lat;
  std::optional<double> ref_lng;
  std::optional<std::size_t> billboard_count;
  std::optional<std::size_t> trajectory_count;
  std::optional<std::string> checksum;
  // Which trajectories the cost formula's I(b) was computed on.
  std::optional<std::string> cost_reference;

  static DatasetManifest read(const std::filesystem::path& path);
  void write(const std::filesystem::path& path) const;
};

struct Dataset {
  std::vector<Billboard> billboards;    // dense ids in file order
  std::vector<Trajectory> trajectories; // dense ids in file order
  std::vector<std::int64_t> billboard_source_ids;
  std::vector<std::int64_t> trajectory_source_ids;
  CoordinateKind coordinates = CoordinateKind::kLatLng;
  Projection projection;
  bool has_costs = false;
  std::optional<std::string> cost_reference;

  ProblemInstance instance(double lambda, const ProbabilityModel& model, Cost budget) const;
  std::vector<std::int64_t> source_ids(std::span<const BillboardId> set) const;
};

// Reads the billboard CSV (id,lat,lng,panel_size[,cost] or id,x,y,...) and
// the trajectory JSON-lines file. Throws ParseError with a line number on
// malformed input, DuplicateIdError on repeated ids and ConfigError when
// counts or checksum disagree with the manifest.
Dataset load_dataset(const std::filesystem::path& manifest_path);

ProblemInstance load_instance(const std::filesystem::path& manifest_path, double lambda,
                              const ProbabilityModel& model, Cost budget);

// Writes both data files and a manifest with counts and checksum. Points are
// written in the dataset's source coordinates with round-trip precision.
DatasetManifest write_dataset(const Dataset& dataset, const std::filesystem::path& dir);

// FNV-1a 64 over the concatenated file bytes, as 16 hex digits.
std::string dataset_checksum(const std::filesystem::path& billboards,
                             const std::filesystem::path& trajectories);

struct CostModelParams {
  double beta_lo = 0.8;
  double beta_hi = 1.2;
  double divisor = 100.0;
  Cost unit = 1000;
};

// floor(beta * influence / divisor) * unit, raised to one unit when zero.
Cost cost_from_influence(double influence, double beta, const CostModelParams& params = {});

// Per-billboard beta drawn uniformly from [beta_lo, beta_hi] in id order.
std::vector<Cost> assign_costs(const InfluenceIndex& index, std::uint64_t seed,
                               const CostModelParams& params = {});

struct SyntheticConfig {
  double width_km = 10.0;
  double height_km = 10.0;
  std::size_t billboard_count = 200;
  std::size_t trajectory_count = 1000;
  // Exponential path lengths; the default puts about 85% under 5 km.
  double mean_length_km = 2.64;
  double max_length_km = 20.0;
  double step_m = 50.0;
  std::size_t hotspot_count = 5;
  double hotspot_spread_m = 400.0;
  // Fraction of trajectories that start near a hotspot.
  double hotspot_bias = 0.8;
  double min_panel_size = 5.0;
  double max_panel_size = 50.0;
  double ref_lat = 40.7128;
  double ref_lng = -74.0060;
  std::optional<std::uint64_t> seed;

  void validate() const;
};

// Deterministic under config.seed. Costs are left at zero.
Dataset generate_synthetic(const SyntheticConfig& config);

double path_length(const Trajectory& t);

}  // namespace tip
