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

#include "tip/partition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "tip/errors.hpp"
#include "tip/selectors.hpp"

namespace tip {

namespace {

double clamp_ratio(double r) { return std::clamp(r, 0.0, 1.0); }

// Shared influence is a difference of sums; rounding residue below the
// operands' scale counts as no overlap at all.
double snap_shared(double shared, double scale) { return shared <= 1e-12 * scale ? 0.0 : shared; }

// Omega({b} | rest) for every b in `members`, divided by I({b}); `rest` must
// be committed to `cache`.
double max_singleton_ratio(const InfluenceIndex& index, const SurvivalCache& cache,
                           std::span<const BillboardId> members) {
  double best = 0.0;
  for (auto b : members) {
    const double alone = index.standalone_influence(b);
    if (alone <= 0.0) continue;
    const double shared =
        cache.contains(b) ? alone : snap_shared(alone - cache.marginal(b), alone);
    best = std::max(best, clamp_ratio(shared / alone));
  }
  return best;
}

double exhaustive_ratio(const InfluenceIndex& index, const BillboardSet& ci,
                        const BillboardSet& cj) {
  if (ci.size() > kExhaustiveClusterCap) {
    throw ConfigError("exhaustive overlap ratio limited to clusters of " +
                      std::to_string(kExhaustiveClusterCap) + " billboards");
  }
  const double cj_value = index.influence(cj);
  double best = 0.0;
  BillboardSet subset;
  BillboardSet joined;
  const std::uint32_t limit = 1u << ci.size();
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    subset.clear();
    for (std::size_t k = 0; k < ci.size(); ++k) {
      if (mask & (1u << k)) subset.push_back(ci[k]);
    }
    const double alone = index.influence(subset);
    if (alone <= 0.0) continue;
    joined = subset;
    joined.insert(joined.end(), cj.begin(), cj.end());
    const double shared =
        snap_shared(alone + cj_value - index.influence(joined), alone + cj_value);
    best = std::max(best, clamp_ratio(shared / alone));
  }
  return best;
}

double external_ratio(const InfluenceIndex& index, const BillboardSet& ci,
                      const BillboardSet& universe) {
  SurvivalCache cache(index);
  for (auto b : universe) {
    if (!std::binary_search(ci.begin(), ci.end(), b)) cache.commit(b);
  }
  return max_singleton_ratio(index, cache, ci);
}

BillboardSet resolve_universe(const InfluenceIndex& index, std::span<const BillboardId> universe) {
  if (universe.empty()) return index.all_billboards();
  auto set = make_set(universe);
  for (auto b : set) index.check_id(b);
  return set;
}

BillboardSet merged(const BillboardSet& a, const BillboardSet& b) {
  BillboardSet out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

OverlapMode parse_overlap_mode(std::string_view text) {
  if (text == "singleton") return OverlapMode::kSingleton;
  if (text == "volume") return OverlapMode::kVolume;
  if (text == "external") return OverlapMode::kExternal;
  if (text == "exhaustive") return OverlapMode::kExhaustive;
  throw ConfigError("unknown overlap mode '" + std::string(text) + "'");
}

std::string_view to_string(OverlapMode mode) {
  switch (mode) {
    case OverlapMode::kSingleton:
      return "singleton";
    case OverlapMode::kVolume:
      return "volume";
    case OverlapMode::kExternal:
      return "external";
    case OverlapMode::kExhaustive:
      return "exhaustive";
  }
  return "singleton";
}

BillboardSet Partition::universe() const {
  BillboardSet all;
  for (const auto& c : clusters) all.insert(all.end(), c.members.begin(), c.members.end());
  std::sort(all.begin(), all.end());
  return all;
}

std::size_t Partition::largest_cluster() const {
  std::size_t best = 0;
  for (const auto& c : clusters) best = std::max(best, c.members.size());
  return best;
}

double overlap(const InfluenceIndex& index, std::span<const BillboardId> a,
               std::span<const BillboardId> b) {
  BillboardSet joined(a.begin(), a.end());
  joined.insert(joined.end(), b.begin(), b.end());
  const double ia = index.influence(a);
  const double ib = index.influence(b);
  return std::max(0.0, snap_shared(ia + ib - index.influence(joined), ia + ib));
}

double overlap_ratio(const InfluenceIndex& index, std::span<const BillboardId> ci,
                     std::span<const BillboardId> cj, OverlapMode mode,
                     std::span<const BillboardId> universe) {
  const auto a = make_set(ci);
  const auto b = make_set(cj);
  switch (mode) {
    case OverlapMode::kSingleton: {
      SurvivalCache cache(index);
      for (auto id : b) cache.commit(id);
      return max_singleton_ratio(index, cache, a);
    }
    case OverlapMode::kVolume: {
      const double total = index.influence(resolve_universe(index, universe));
      if (total <= 0.0) return 0.0;
      return clamp_ratio(overlap(index, a, b) / total);
    }
    case OverlapMode::kExternal:
      return external_ratio(index, a, resolve_universe(index, universe));
    case OverlapMode::kExhaustive:
      return exhaustive_ratio(index, a, b);
  }
  return 0.0;
}

void normalize(Partition& partition) {
  auto& cs = partition.clusters;
  for (auto& c : cs) c.members = make_set(c.members);
  std::sort(cs.begin(), cs.end(), [](const Cluster& x, const Cluster& y) {
    if (x.members.size() != y.members.size()) return x.members.size() < y.members.size();
    return x.members < y.members;
  });
  for (std::size_t i = 0; i < cs.size(); ++i) cs[i].id = static_cast<std::uint32_t>(i);
}

Partition theta_partition(const InfluenceIndex& index, std::span<const BillboardId> universe,
                          double theta, OverlapMode mode) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("theta must lie in [0, 1]");
  const auto all = resolve_universe(index, universe);

  // Clusters keyed by their smallest member.
  std::map<BillboardId, BillboardSet> clusters;
  std::map<BillboardId, std::set<BillboardId>> neighbours;
  for (auto b : all) clusters[b] = {b};

  // Two clusters can only overlap if they share a trajectory.
  std::vector<char> member(index.billboard_count(), 0);
  for (auto b : all) member[b] = 1;
  for (std::size_t t = 0; t < index.trajectory_count(); ++t) {
    const auto list = index.inverted(static_cast<TrajectoryId>(t));
    for (std::size_t x = 0; x < list.size(); ++x) {
      if (!member[list[x].id]) continue;
      for (std::size_t y = x + 1; y < list.size(); ++y) {
        if (!member[list[y].id]) continue;
        neighbours[list[x].id].insert(list[y].id);
        neighbours[list[y].id].insert(list[x].id);
      }
    }
  }

  using Key = std::pair<BillboardId, BillboardId>;
  std::map<Key, double> scores;
  std::map<Key, double> shared;  // overlap volume, tie-break in external mode
  std::map<BillboardId, double> external;

  auto refresh_external = [&] {
    external.clear();
    for (const auto& [id, members] : clusters) external[id] = external_ratio(index, members, all);
  };
  auto pair_score = [&](BillboardId x, BillboardId y) {
    const auto& cx = clusters.at(x);
    const auto& cy = clusters.at(y);
    if (mode == OverlapMode::kExternal) return std::max(external.at(x), external.at(y));
    return std::max(overlap_ratio(index, cx, cy, mode, all),
                    overlap_ratio(index, cy, cx, mode, all));
  };
  auto rescore = [&](BillboardId x) {
    for (auto y : neighbours[x]) {
      const Key key{std::min(x, y), std::max(x, y)};
      scores[key] = pair_score(key.first, key.second);
      if (mode == OverlapMode::kExternal) {
        shared[key] = overlap(index, clusters.at(key.first), clusters.at(key.second));
      }
    }
  };

  if (mode == OverlapMode::kExternal) refresh_external();
  for (const auto& [id, members] : clusters) rescore(id);

  for (;;) {
    std::optional<Key> pick;
    double pick_score = 0.0;
    for (const auto& [key, score] : scores) {
      if (!(score > theta)) continue;
      bool take = !pick || detail::definitely_greater(score, pick_score);
      if (!take && pick && !detail::definitely_greater(pick_score, score) &&
          mode == OverlapMode::kExternal) {
        take = detail::definitely_greater(shared.at(key), shared.at(*pick));
      }
      if (take) {
        pick = key;
        pick_score = score;
      }
    }
    if (!pick) break;

    const auto [keep, gone] = *pick;
    clusters[keep] = merged(clusters[keep], clusters[gone]);
    clusters.erase(gone);

    auto joined = neighbours[keep];
    joined.insert(neighbours[gone].begin(), neighbours[gone].end());
    joined.erase(keep);
    joined.erase(gone);
    for (auto n : neighbours[gone]) {
      neighbours[n].erase(gone);
      scores.erase({std::min(n, gone), std::max(n, gone)});
      shared.erase({std::min(n, gone), std::max(n, gone)});
    }
    for (auto n : neighbours[keep]) {
      scores.erase({std::min(n, keep), std::max(n, keep)});
      shared.erase({std::min(n, keep), std::max(n, keep)});
    }
    neighbours.erase(gone);
    neighbours[keep] = joined;
    for (auto n : joined) neighbours[n].insert(keep);

    if (mode == OverlapMode::kExternal) {
      refresh_external();
      for (auto& [key, score] : scores) score = pair_score(key.first, key.second);
    }
    rescore(keep);
  }

  Partition out;
  out.theta = theta;
  out.mode = mode;
  for (auto& [id, members] : clusters) out.clusters.push_back({id, std::move(members)});
  normalize(out);
  return out;
}

OverlapReport validate_partition(const InfluenceIndex& index, const Partition& partition,
                                 std::span<const BillboardId> universe) {
  const auto& cs = partition.clusters;
  std::vector<char> seen(index.billboard_count(), 0);
  for (const auto& c : cs) {
    if (c.members.empty()) throw PartitionError("cluster " + std::to_string(c.id) + " is empty");
    for (auto b : c.members) {
      index.check_id(b);
      if (seen[b]) throw PartitionError("billboard " + std::to_string(b) + " in two clusters");
      seen[b] = 1;
    }
  }
  const auto covered = partition.universe();
  if (resolve_universe(index, universe) != covered) {
    throw PartitionError("partition does not cover the universe exactly");
  }

  OverlapReport report;
  report.mode = partition.mode;
  report.theta = partition.theta;
  const std::size_t m = cs.size();
  report.ratios.assign(m, std::vector<double>(m, 0.0));
  if (partition.mode == OverlapMode::kExternal) {
    for (std::size_t i = 0; i < m; ++i) {
      const double r = external_ratio(index, make_set(cs[i].members), covered);
      for (std::size_t j = 0; j < m; ++j) report.ratios[i][j] = r;
      report.max_ratio = std::max(report.max_ratio, r);
      if (r > partition.theta) report.violations.push_back({i, i, r});
    }
    return report;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      report.ratios[i][j] =
          overlap_ratio(index, cs[i].members, cs[j].members, partition.mode, covered);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double r = std::max(report.ratios[i][j], report.ratios[j][i]);
      report.max_ratio = std::max(report.max_ratio, r);
      if (r > partition.theta) report.violations.push_back({i, j, r});
    }
  }
  return report;
}

}  // namespace tip
