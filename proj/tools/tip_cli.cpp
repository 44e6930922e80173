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


// Command-line front end: dataset generation and ingestion, cost
// assignment, index and partition construction, selection and experiments.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tip/budget_dp.hpp"
#include "tip/dataset.hpp"
#include "tip/errors.hpp"
#include "tip/experiment.hpp"
#include "tip/serialization.hpp"

namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tip::ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tip::ConfigError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted billboard placement over trajectory data"};
  app.require_subcommand(1);

  // gen
  tip::SyntheticConfig gen;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen_cmd->add_option("--out", gen_out, "Output directory")->required();
  gen_cmd->add_option("--seed", gen_seed, "Random seed")->required();
  gen_cmd->add_option("--billboards", gen.billboard_count)->capture_default_str();
  gen_cmd->add_option("--trajectories", gen.trajectory_count)->capture_default_str();
  gen_cmd->add_option("--width-km", gen.width_km)->capture_default_str();
  gen_cmd->add_option("--height-km", gen.height_km)->capture_default_str();
  gen_cmd->add_option("--mean-length-km", gen.mean_length_km)->capture_default_str();
  gen_cmd->add_option("--max-length-km", gen.max_length_km)->capture_default_str();
  gen_cmd->add_option("--step-m", gen.step_m)->capture_default_str();
  gen_cmd->add_option("--hotspots", gen.hotspot_count)->capture_default_str();
  gen_cmd->add_option("--hotspot-spread-m", gen.hotspot_spread_m)->capture_default_str();
  gen_cmd->add_option("--hotspot-bias", gen.hotspot_bias)->capture_default_str();

  // ingest
  std::string ingest_manifest;
  std::string ingest_out;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate a dataset and print a summary");
  ingest_cmd->add_option("--manifest", ingest_manifest)->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--out", ingest_out, "Rewrite a normalized copy into this directory");

  // cost
  std::string cost_manifest;
  std::string cost_out;
  std::uint64_t cost_seed = 0;
  double cost_lambda = 100.0;
  std::string cost_model = "uniform:0.1";
  tip::CostModelParams cost_params;
  auto* cost_cmd = app.add_subcommand("cost", "Assign costs from standalone influence");
  cost_cmd->add_option("--manifest", cost_manifest)->required()->check(CLI::ExistingFile);
  cost_cmd->add_option("--out", cost_out, "Output directory")->required();
  cost_cmd->add_option("--seed", cost_seed, "Seed for the per-billboard beta")->required();
  cost_cmd->add_option("--lambda", cost_lambda)->capture_default_str();
  cost_cmd->add_option("--prob-model", cost_model)->capture_default_str();
  cost_cmd->add_option("--divisor", cost_params.divisor)->capture_default_str();
  cost_cmd->add_option("--unit", cost_params.unit)->capture_default_str();

  // index
  std::string index_manifest;
  std::string index_out;
  double index_lambda = 100.0;
  std::string index_model;
  auto* index_cmd = app.add_subcommand("index", "Build forward and inverted influence lists");
  index_cmd->add_option("--manifest", index_manifest)->required()->check(CLI::ExistingFile);
  index_cmd->add_option("--lambda", index_lambda)->required();
  index_cmd->add_option("--prob-model", index_model, "uniform:<p> | panel:<A> | panel-half")
      ->required();
  index_cmd->add_option("--out", index_out, "Index file (default stdout)");

  // partition
  std::string part_index;
  std::string part_out;
  double part_theta = 0.2;
  std::string part_mode = "singleton";
  bool part_report = false;
  auto* part_cmd = app.add_subcommand("partition", "Build a theta-partition");
  part_cmd->add_option("--index", part_index)->required()->check(CLI::ExistingFile);
  part_cmd->add_option("--theta", part_theta)->capture_default_str();
  part_cmd->add_option("--mode", part_mode, "singleton | volume | external | exhaustive")
      ->capture_default_str();
  part_cmd->add_option("--out", part_out, "Partition file (default stdout)");
  part_cmd->add_flag("--report", part_report, "Print the overlap report to stderr");

  // select
  std::string sel_index;
  std::string sel_algo;
  tip::Cost sel_budget = 0;
  int sel_tau = 2;
  std::string sel_partition;
  std::optional<double> sel_theta;
  std::string sel_mode = "singleton";
  std::string sel_dump;
  std::uint64_t sel_seed = 1;
  bool sel_no_timing = false;
  std::string sel_out;
  std::optional<tip::Cost> sel_quantum;
  auto* sel_cmd = app.add_subcommand("select", "Select billboards under a budget");
  sel_cmd->add_option("--index", sel_index)->required()->check(CLI::ExistingFile);
  sel_cmd->add_option("--algo", sel_algo)
      ->required()
      ->check(CLI::IsMember({"greedy", "enum", "partsel", "lazyprobe", "topk", "anneal", "exact"}));
  sel_cmd->add_option("--budget", sel_budget)->required();
  sel_cmd->add_option("--tau", sel_tau)->capture_default_str();
  sel_cmd->add_option("--partition", sel_partition, "Partition file")->check(CLI::ExistingFile);
  sel_cmd->add_option("--theta", sel_theta, "Build a partition on the fly");
  sel_cmd->add_option("--mode", sel_mode)->capture_default_str();
  sel_cmd->add_option("--quantum", sel_quantum, "DP budget quantum (default: gcd of costs)");
  sel_cmd->add_option("--dump-matrices", sel_dump, "Write the DP tables as JSON");
  sel_cmd->add_option("--seed", sel_seed, "Annealing seed")->capture_default_str();
  sel_cmd->add_flag("--no-timing", sel_no_timing, "Write wall_ms as 0");
  sel_cmd->add_option("--out", sel_out, "Result file (default stdout)");

  // bench
  std::string bench_spec;
  std::string bench_csv;
  std::string bench_json;
  bool bench_no_timing = false;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment grid");
  bench_cmd->add_option("--spec", bench_spec)->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--csv", bench_csv, "CSV output (default stdout)");
  bench_cmd->add_option("--json", bench_json, "JSON output");
  bench_cmd->add_flag("--no-timing", bench_no_timing, "Write wall_ms as 0");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      gen.seed = gen_seed;
      const auto m = tip::write_dataset(tip::generate_synthetic(gen), gen_out);
      std::cerr << "wrote " << *m.billboard_count << " billboards, " << *m.trajectory_count
                << " trajectories to " << gen_out << "\n";
    } else if (*ingest_cmd) {
      const auto d = tip::load_dataset(ingest_manifest);
      nlohmann::ordered_json j;
      j["billboards"] = d.billboards.size();
      j["trajectories"] = d.trajectories.size();
      j["points"] = [&] {
        std::size_t n = 0;
        for (const auto& t : d.trajectories) n += t.points.size();
        return n;
      }();
      j["coordinates"] = std::string(tip::to_string(d.coordinates));
      if (d.coordinates == tip::CoordinateKind::kLatLng) {
        j["ref_lat"] = d.projection.ref_lat();
        j["ref_lng"] = d.projection.ref_lng();
      }
      j["has_costs"] = d.has_costs;
      const auto [lo, hi] = std::minmax_element(d.billboard_source_ids.begin(),
                                                d.billboard_source_ids.end());
      j["billboard_source_id_range"] = {*lo, *hi};
      if (!ingest_out.empty()) {
        j["checksum"] = *tip::write_dataset(d, ingest_out).checksum;
      }
      std::cout << j.dump(2) << "\n";
    } else if (*cost_cmd) {
      auto d = tip::load_dataset(cost_manifest);
      const auto model = tip::parse_probability_model(cost_model);
      const auto index = tip::InfluenceIndex::build(d.instance(cost_lambda, model, 0));
      const auto costs = tip::assign_costs(index, cost_seed, cost_params);
      for (auto& b : d.billboards) b.cost = costs[b.id];
      d.has_costs = true;
      std::ostringstream ref;
      ref << "all " << d.trajectories.size() << " trajectories, lambda " << cost_lambda
          << ", model " << cost_model << ", seed " << cost_seed;
      d.cost_reference = ref.str();
      tip::write_dataset(d, cost_out);
    } else if (*index_cmd) {
      const auto d = tip::load_dataset(index_manifest);
      if (!d.has_costs) std::cerr << "note: dataset has no costs; every billboard costs 0\n";
      const auto model = tip::parse_probability_model(index_model);
      const auto index = tip::InfluenceIndex::build(d.instance(index_lambda, model, 0));
      emit(index_out, tip::index_to_json(index, index_lambda, model));
      const auto& s = index.stats();
      std::cerr << s.postings << " postings, " << s.influenced_trajectories
                << " influenced trajectories, " << s.build_ms << " ms\n";
    } else if (*part_cmd) {
      const auto file = tip::index_from_json(slurp(part_index));
      const auto universe = file.index.all_billboards();
      const auto p =
          tip::theta_partition(file.index, universe, part_theta, tip::parse_overlap_mode(part_mode));
      if (part_report) {
        const auto report = tip::validate_partition(file.index, p);
        std::cerr << p.clusters.size() << " clusters, largest " << p.largest_cluster()
                  << ", max ratio " << report.max_ratio << ", violations "
                  << report.violations.size() << "\n";
      }
      emit(part_out, tip::partition_to_json(p));
    } else if (*sel_cmd) {
      const auto file = tip::index_from_json(slurp(sel_index));
      tip::SolverConfig config;
      config.tau = sel_tau;
      config.quantum = sel_quantum;
      config.anneal.seed = sel_seed;
      if (!sel_partition.empty()) {
        config.partition = tip::partition_from_json(slurp(sel_partition));
        tip::validate_partition(file.index, *config.partition);
      } else if (sel_theta) {
        config.partition = tip::theta_partition(file.index, file.index.all_billboards(),
                                                *sel_theta, tip::parse_overlap_mode(sel_mode));
      } else if (tip::uses_partition(sel_algo)) {
        throw tip::ConfigError(sel_algo + " needs --partition or --theta");
      }
      const auto run = tip::run_algorithm(sel_algo, file.index, sel_budget, config);
      if (!sel_dump.empty()) {
        if (!run.dp) throw tip::ConfigError("--dump-matrices applies to partsel and lazyprobe");
        emit(sel_dump, tip::dp_tables_to_json(run.dp->tables, run.dp->grid));
      }
      tip::ResultRecord r;
      r.algorithm = sel_algo;
      r.budget = sel_budget;
      r.lambda = file.lambda;
      if (config.partition) r.theta = config.partition->theta;
      r.chosen_ids.assign(run.selection.chosen.begin(), run.selection.chosen.end());
      r.cost = run.selection.cost;
      r.influence = run.selection.influence;
      r.wall_ms = run.wall_ms;
      r.enum_calls = run.selection.diagnostics.enum_calls;
      r.estimator_calls = run.selection.diagnostics.estimator_calls;
      emit(sel_out, tip::result_to_json(r, !sel_no_timing));
    } else if (*bench_cmd) {
      const auto spec =
          tip::ExperimentSpec::from_json(slurp(bench_spec), fs::path(bench_spec).parent_path());
      const auto rows = tip::run_experiment(spec);
      emit(bench_csv, tip::rows_to_csv(rows, !bench_no_timing));
      if (!bench_json.empty()) emit(bench_json, tip::rows_to_json(rows, !bench_no_timing));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
