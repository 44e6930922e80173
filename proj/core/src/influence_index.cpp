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

#include "tip/influence_index.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "tip/errors.hpp"
#include "tip/spatial_grid.hpp"

namespace tip {

InfluenceIndex InfluenceIndex::build(const ProblemInstance& instance) {
  const auto start = std::chrono::steady_clock::now();
  instance.validate();

  InfluenceIndex index;
  index.costs_.reserve(instance.billboards.size());
  index.forward_.resize(instance.billboards.size());
  index.inverted_.resize(instance.trajectories.size());

  const SpatialPointIndex grid(instance.trajectories, instance.lambda);
  const double max_panel = max_panel_size(instance.billboards);
  for (const auto& b : instance.billboards) {
    index.costs_.push_back(b.cost);
    const double p = meet_probability(instance.model, b, max_panel);
    auto& list = index.forward_[b.id];
    for (auto t : grid.query_trajectories(b.location, instance.lambda)) {
      list.push_back({t, p});
    }
  }
  index.finish();
  index.stats_.points = grid.point_count();
  index.stats_.grid_cells = grid.cell_count();
  index.stats_.build_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return index;
}

InfluenceIndex InfluenceIndex::from_forward_lists(std::vector<Cost> costs,
                                                  std::size_t trajectory_count,
                                                  std::vector<std::vector<Posting>> forward) {
  if (costs.size() != forward.size()) {
    throw ConfigError("cost vector and forward lists differ in length");
  }
  InfluenceIndex index;
  index.costs_ = std::move(costs);
  index.forward_ = std::move(forward);
  index.inverted_.resize(trajectory_count);
  for (std::size_t b = 0; b < index.forward_.size(); ++b) {
    if (index.costs_[b] < 0) throw ConfigError("negative billboard cost");
    auto& list = index.forward_[b];
    std::sort(list.begin(), list.end(),
              [](const Posting& x, const Posting& y) { return x.id < y.id; });
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (list[k].id >= trajectory_count) throw UnknownIdError("posting names unknown trajectory");
      if (k > 0 && list[k].id == list[k - 1].id) {
        throw ConfigError("forward list repeats trajectory " + std::to_string(list[k].id));
      }
      if (!(list[k].probability > 0.0 && list[k].probability <= 1.0)) {
        throw ConfigError("posting probability outside (0, 1]");
      }
    }
  }
  index.finish();
  return index;
}

void InfluenceIndex::finish() {
  for (auto& list : inverted_) list.clear();
  standalone_.assign(forward_.size(), 0.0);
  std::size_t postings = 0;
  std::size_t max_len = 0;
  for (std::size_t b = 0; b < forward_.size(); ++b) {
    for (const auto& e : forward_[b]) {
      inverted_[e.id].push_back({static_cast<std::uint32_t>(b), e.probability});
      standalone_[b] += e.probability;
    }
    postings += forward_[b].size();
    max_len = std::max(max_len, forward_[b].size());
  }
  // Billboards are visited in ascending order, so inverted lists come out sorted.
  stats_.billboards = forward_.size();
  stats_.trajectories = inverted_.size();
  stats_.postings = postings;
  stats_.max_forward_length = max_len;
  stats_.mean_forward_length =
      forward_.empty() ? 0.0 : static_cast<double>(postings) / static_cast<double>(forward_.size());
  stats_.influenced_trajectories = static_cast<std::size_t>(
      std::count_if(inverted_.begin(), inverted_.end(), [](const auto& l) { return !l.empty(); }));
}

void InfluenceIndex::check_id(BillboardId b) const {
  if (b >= forward_.size()) throw UnknownIdError("unknown billboard id " + std::to_string(b));
}

std::span<const Posting> InfluenceIndex::forward(BillboardId b) const {
  check_id(b);
  return forward_[b];
}

std::span<const Posting> InfluenceIndex::inverted(TrajectoryId t) const {
  if (t >= inverted_.size()) throw UnknownIdError("unknown trajectory id " + std::to_string(t));
  return inverted_[t];
}

Cost InfluenceIndex::cost(BillboardId b) const {
  check_id(b);
  return costs_[b];
}

Cost InfluenceIndex::total_cost(std::span<const BillboardId> set) const {
  Cost total = 0;
  for (auto b : make_set(set)) total += cost(b);
  return total;
}

double InfluenceIndex::standalone_influence(BillboardId b) const {
  check_id(b);
  return standalone_[b];
}

BillboardSet InfluenceIndex::all_billboards() const {
  BillboardSet all(forward_.size());
  for (std::size_t b = 0; b < all.size(); ++b) all[b] = static_cast<BillboardId>(b);
  return all;
}

double InfluenceIndex::influence(std::span<const BillboardId> set) const {
  const auto members = make_set(set);
  std::vector<Posting> touched;
  for (auto b : members) {
    check_id(b);
    touched.insert(touched.end(), forward_[b].begin(), forward_[b].end());
  }
  // Group by trajectory; the stable sort keeps member order within a group
  // so the product is evaluated identically on every call.
  std::stable_sort(touched.begin(), touched.end(),
                   [](const Posting& x, const Posting& y) { return x.id < y.id; });
  double total = 0.0;
  std::size_t k = 0;
  while (k < touched.size()) {
    const auto t = touched[k].id;
    double survival = 1.0;
    for (; k < touched.size() && touched[k].id == t; ++k) survival *= 1.0 - touched[k].probability;
    total += 1.0 - survival;
  }
  return total;
}

SurvivalCache::SurvivalCache(const InfluenceIndex& index)
    : index_(&index),
      survival_(index.trajectory_count(), 1.0),
      in_set_(index.billboard_count(), 0) {}

double SurvivalCache::marginal(BillboardId b) const {
  index_->check_id(b);
  if (in_set_[b]) throw DuplicateIdError("billboard " + std::to_string(b) + " already selected");
  double gain = 0.0;
  for (const auto& e : index_->forward(b)) gain += survival_[e.id] * e.probability;
  return gain;
}

double SurvivalCache::commit(BillboardId b) {
  const double gain = marginal(b);
  for (const auto& e : index_->forward(b)) {
    if (survival_[e.id] == 1.0) touched_.push_back(e.id);
    survival_[e.id] *= 1.0 - e.probability;
  }
  in_set_[b] = 1;
  members_.push_back(b);
  total_ += gain;
  cost_ += index_->cost(b);
  return gain;
}

void SurvivalCache::reset() {
  for (auto t : touched_) survival_[t] = 1.0;
  for (auto b : members_) in_set_[b] = 0;
  touched_.clear();
  members_.clear();
  total_ = 0.0;
  cost_ = 0;
}

BillboardSet SurvivalCache::members_sorted() const { return make_set(members_); }

}  // namespace tip
