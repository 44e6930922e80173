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


#include <benchmark/benchmark.h>

#include <map>

#include "tip/baselines.hpp"
#include "tip/budget_dp.hpp"
#include "tip/dataset.hpp"
#include "tip/partition.hpp"
#include "tip/selectors.hpp"

namespace {

using namespace tip;

struct Fixture {
  ProblemInstance instance;
  InfluenceIndex index;
  Cost budget = 0;
};

Fixture make_city(std::size_t billboards) {
  SyntheticConfig config;
  config.billboard_count = billboards;
  config.seed = 1;
  auto instance = generate_synthetic(config).instance(100.0, PanelHalfMax{}, 0);
  const auto costs = assign_costs(InfluenceIndex::build(instance), 7, {0.8, 1.2, 2.0, 1000});
  for (auto& b : instance.billboards) b.cost = costs[b.id];
  auto index = InfluenceIndex::build(instance);
  const Cost budget = index.total_cost(index.all_billboards()) / 10 / 1000 * 1000;
  return {std::move(instance), std::move(index), budget};
}

// Default synthetic city with costs from standalone influence.
const Fixture& city(std::size_t billboards) {
  static std::map<std::size_t, Fixture> cache;
  auto it = cache.find(billboards);
  if (it == cache.end()) it = cache.emplace(billboards, make_city(billboards)).first;
  return it->second;
}

void BM_BuildIndex(benchmark::State& state) {
  const auto& f = city(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(InfluenceIndex::build(f.instance));
}
BENCHMARK(BM_BuildIndex)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Greedy(benchmark::State& state) {
  const auto& f = city(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_sel(f.index, f.index.all_billboards(), f.budget));
  }
}
BENCHMARK(BM_Greedy)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Enum(benchmark::State& state) {
  const auto& f = city(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enum_sel(f.index, f.index.all_billboards(), f.budget, 1));
  }
}
BENCHMARK(BM_Enum)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_TopK(benchmark::State& state) {
  const auto& f = city(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(top_k(f.index, f.index.all_billboards(), f.budget));
}
BENCHMARK(BM_TopK)->Arg(200)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_PartSel(benchmark::State& state) {
  const auto& f = city(100);
  const auto p = theta_partition(f.index, f.index.all_billboards(), 0.2, OverlapMode::kSingleton);
  for (auto _ : state) {
    benchmark::DoNotOptimize(state.range(0) ? lazy_probe(f.index, p, f.budget, {1, {}})
                                            : part_sel(f.index, p, f.budget, {1, {}}));
  }
  state.SetLabel(state.range(0) ? "lazyprobe" : "partsel");
}
BENCHMARK(BM_PartSel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
