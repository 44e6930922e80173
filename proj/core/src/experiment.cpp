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


#include "tip/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <future>

#include "json.hpp"
#include "tip/errors.hpp"
#include "tip/rng.hpp"
#include "tip/selectors.hpp"

namespace tip {

using nlohmann::json;

bool is_algorithm(std::string_view name) {
  return std::find(std::begin(kAlgorithms), std::end(kAlgorithms), name) != std::end(kAlgorithms);
}

bool uses_partition(std::string_view name) { return name == "partsel" || name == "lazyprobe"; }

AlgorithmRun run_algorithm(std::string_view name, const InfluenceIndex& index, Cost budget,
                           const SolverConfig& config) {
  if (!is_algorithm(name)) throw ConfigError("unknown algorithm '" + std::string(name) + "'");
  if (uses_partition(name) && !config.partition) {
    throw ConfigError(std::string(name) + " needs a partition");
  }
  const auto universe = index.all_billboards();
  const auto start = std::chrono::steady_clock::now();
  AlgorithmRun run;
  if (name == "greedy") {
    run.selection = greedy_sel(index, universe, budget);
  } else if (name == "enum") {
    run.selection = enum_sel(index, universe, budget, config.tau);
    run.selection.diagnostics.enum_calls = 1;
  } else if (name == "partsel" || name == "lazyprobe") {
    const DpOptions options{config.tau, config.quantum};
    run.dp = name == "partsel" ? part_sel(index, *config.partition, budget, options)
                               : lazy_probe(index, *config.partition, budget, options);
    run.selection = run.dp->selection;
  } else if (name == "topk") {
    run.selection = top_k(index, universe, budget);
  } else if (name == "anneal") {
    run.selection = simulated_annealing(index, universe, budget, config.anneal);
  } else {
    run.selection = exact_opt(index, universe, budget, config.exact_cap);
  }
  run.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return run;
}

namespace {

template <class T>
std::vector<T> grid(const json& j, const char* key, std::vector<T> fallback = {}) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

SyntheticConfig synthetic_from_json(const json& j) {
  SyntheticConfig c;
  c.width_km = j.value("width_km", c.width_km);
  c.height_km = j.value("height_km", c.height_km);
  c.billboard_count = j.value("billboards", c.billboard_count);
  c.trajectory_count = j.value("trajectories", c.trajectory_count);
  c.mean_length_km = j.value("mean_length_km", c.mean_length_km);
  c.max_length_km = j.value("max_length_km", c.max_length_km);
  c.step_m = j.value("step_m", c.step_m);
  c.hotspot_count = j.value("hotspots", c.hotspot_count);
  c.hotspot_spread_m = j.value("hotspot_spread_m", c.hotspot_spread_m);
  c.hotspot_bias = j.value("hotspot_bias", c.hotspot_bias);
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

ExperimentSpec ExperimentSpec::from_json(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  ExperimentSpec s;
  try {
    const auto j = json::parse(text);
    if (j.contains("dataset")) {
      std::filesystem::path p = j.at("dataset").get<std::string>();
      s.dataset = p.is_absolute() ? p : base_dir / p;
    }
    if (j.contains("synthetic")) s.synthetic = synthetic_from_json(j.at("synthetic"));
    if (j.contains("costs")) {
      const auto& c = j.at("costs");
      s.cost_seed = c.value("seed", s.cost_seed);
      s.cost_model.divisor = c.value("divisor", s.cost_model.divisor);
      s.cost_model.unit = c.value("unit", s.cost_model.unit);
      s.cost_model.beta_lo = c.value("beta_lo", s.cost_model.beta_lo);
      s.cost_model.beta_hi = c.value("beta_hi", s.cost_model.beta_hi);
    }
    s.budgets = grid<Cost>(j, "budgets");
    s.lambdas = grid<double>(j, "lambdas");
    s.thetas = grid<double>(j, "thetas", s.thetas);
    s.models = grid<std::string>(j, "models");
    s.algorithms = grid<std::string>(j, "algorithms");
    s.repetitions = j.value("repetitions", s.repetitions);
    s.tau = j.value("tau", s.tau);
    if (j.contains("partition_mode")) {
      s.partition_mode = parse_overlap_mode(j.at("partition_mode").get<std::string>());
    }
    s.seed = j.value("seed", s.seed);
    if (j.contains("anneal")) {
      const auto& a = j.at("anneal");
      if (a.contains("initial_temperature")) {
        s.anneal.initial_temperature = a.at("initial_temperature").get<double>();
      }
      s.anneal.cooling = a.value("cooling", s.anneal.cooling);
      s.anneal.iterations_per_level = a.value("iterations", s.anneal.iterations_per_level);
      s.anneal.restarts = a.value("restarts", s.anneal.restarts);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad experiment spec: ") + e.what());
  }
  s.validate();
  return s;
}

void ExperimentSpec::validate() const {
  if (dataset.has_value() == synthetic.has_value()) {
    throw ConfigError("experiment needs exactly one of dataset or synthetic");
  }
  if (budgets.empty() || lambdas.empty() || thetas.empty() || models.empty()) {
    throw ConfigError("budget, lambda, theta and model grids must be non-empty");
  }
  for (auto b : budgets) {
    if (b < 0) throw ConfigError("budgets must be non-negative");
  }
  for (auto l : lambdas) {
    if (!(l > 0.0)) throw ConfigError("lambdas must be positive");
  }
  for (const auto& m : models) parse_probability_model(m);
  for (const auto& a : algorithms) {
    if (!is_algorithm(a)) throw ConfigError("unknown algorithm '" + a + "'");
  }
  if (repetitions < 1) throw ConfigError("repetitions must be positive");
  if (tau < 1) throw ConfigError("tau must be positive");
  anneal.validate();
}

namespace {

std::vector<ExperimentRow> run_grid_point(const ExperimentSpec& spec, const Dataset& data,
                                          double lambda, const std::string& model_text) {
  const auto model = parse_probability_model(model_text);
  auto instance = data.instance(lambda, model, 0);
  auto index = InfluenceIndex::build(instance);
  if (!data.has_costs) {
    const auto costs = assign_costs(index, spec.cost_seed, spec.cost_model);
    for (auto& b : instance.billboards) b.cost = costs[b.id];
    index = InfluenceIndex::build(instance);
  }
  const auto universe = index.all_billboards();

  std::vector<std::optional<Partition>> partitions(spec.thetas.size());
  std::vector<ExperimentRow> rows;
  for (auto budget : spec.budgets) {
    for (const auto& algo : spec.algorithms) {
      const bool partitioned = uses_partition(algo);
      const std::size_t theta_runs = partitioned ? spec.thetas.size() : 1;
      for (std::size_t ti = 0; ti < theta_runs; ++ti) {
        SolverConfig config;
        config.tau = spec.tau;
        config.anneal = spec.anneal;
        ExperimentRow row;
        row.algorithm = algo;
        row.model = model_text;
        row.lambda = lambda;
        row.budget = budget;
        row.repetitions = spec.repetitions;
        if (partitioned) {
          if (!partitions[ti]) {
            partitions[ti] = theta_partition(index, universe, spec.thetas[ti], spec.partition_mode);
          }
          config.partition = partitions[ti];
          row.theta = spec.thetas[ti];
        }
        for (int rep = 0; rep < spec.repetitions; ++rep) {
          if (algo == "anneal") {
            config.anneal.seed = Rng::derive(spec.seed, static_cast<std::uint64_t>(rep));
            row.seeds.push_back(config.anneal.seed);
          }
          const auto run = run_algorithm(algo, index, budget, config);
          row.influence += run.selection.influence;
          row.cost += static_cast<double>(run.selection.cost);
          row.wall_ms += run.wall_ms;
          row.enum_calls += static_cast<double>(run.selection.diagnostics.enum_calls);
          row.estimator_calls += static_cast<double>(run.selection.diagnostics.estimator_calls);
        }
        const double n = spec.repetitions;
        row.influence /= n;
        row.cost /= n;
        row.wall_ms /= n;
        row.enum_calls /= n;
        row.estimator_calls /= n;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.algorithms.empty()) return {};
  const Dataset data = spec.dataset ? load_dataset(*spec.dataset) : generate_synthetic(*spec.synthetic);

  std::vector<std::future<std::vector<ExperimentRow>>> tasks;
  for (auto lambda : spec.lambdas) {
    for (const auto& model : spec.models) {
      tasks.push_back(std::async(std::launch::async, run_grid_point, std::cref(spec),
                                 std::cref(data), lambda, std::cref(model)));
    }
  }
  // Tasks are joined in grid order, so the output order never depends on
  // scheduling.
  std::vector<ExperimentRow> rows;
  for (auto& t : tasks) {
    auto part = t.get();
    std::move(part.begin(), part.end(), std::back_inserter(rows));
  }
  return rows;
}

namespace {

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, v).ptr;
  return std::string(buf, end);
}

}  // namespace

std::string rows_to_csv(const std::vector<ExperimentRow>& rows, bool include_timing) {
  std::string out(kResultsHeader);
  out += "\nalgorithm,model,lambda,theta,budget,repetitions,influence,cost,wall_ms,enum_calls,"
         "estimator_calls,seeds\n";
  for (const auto& r : rows) {
    std::string seeds;
    for (std::size_t k = 0; k < r.seeds.size(); ++k) {
      if (k) seeds += ';';
      seeds += std::to_string(r.seeds[k]);
    }
    out += r.algorithm + "," + r.model + "," + num(r.lambda) + "," +
           (r.theta ? num(*r.theta) : std::string()) + "," + std::to_string(r.budget) + "," +
           std::to_string(r.repetitions) + "," + num(r.influence) + "," + num(r.cost) + "," +
           num(include_timing ? r.wall_ms : 0.0) + "," + num(r.enum_calls) + "," +
           num(r.estimator_calls) + "," + seeds + "\n";
  }
  return out;
}

std::string rows_to_json(const std::vector<ExperimentRow>& rows, bool include_timing) {
  nlohmann::ordered_json j;
  j["schema"] = std::string(kResultsHeader);
  auto& out = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"algorithm", r.algorithm},
                   {"model", r.model},
                   {"lambda", r.lambda},
                   {"theta", r.theta ? nlohmann::ordered_json(*r.theta) : nullptr},
                   {"budget", r.budget},
                   {"repetitions", r.repetitions},
                   {"influence", r.influence},
                   {"cost", r.cost},
                   {"wall_ms", include_timing ? r.wall_ms : 0.0},
                   {"enum_calls", r.enum_calls},
                   {"estimator_calls", r.estimator_calls},
                   {"seeds", r.seeds}});
  }
  return j.dump(2) + "\n";
}

}  // namespace tip
