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
#include <span>
#include <vector>

#include "tip/model.hpp"

namespace tip {

// One (id, probability) posting in a forward or inverted list.
struct Posting {
  std::uint32_t id = 0;
  double probability = 0.0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct IndexStats {
  std::size_t billboards = 0;
  std::size_t trajectories = 0;
  std::size_t points = 0;
  std::size_t grid_cells = 0;
  std::size_t postings = 0;
  std::size_t max_forward_length = 0;
  double mean_forward_length = 0.0;
  std::size_t influenced_trajectories = 0;
  double build_ms = 0.0;
};

// Forward lists (billboard -> influenced trajectories) and their transpose.
// Immutable after construction and safe to share between threads.
class InfluenceIndex {
 public:
  // Range-queries a lambda-sized grid over all trajectory points.
  static InfluenceIndex build(const ProblemInstance& instance);

  // Builds from explicit forward lists (tests, injected scenarios). Lists
  // are sorted and must not repeat a trajectory; probabilities must be in
  // (0, 1].
  static InfluenceIndex from_forward_lists(std::vector<Cost> costs,
                                           std::size_t trajectory_count,
                                           std::vector<std::vector<Posting>> forward);

  std::size_t billboard_count() const { return forward_.size(); }
  std::size_t trajectory_count() const { return inverted_.size(); }

  std::span<const Posting> forward(BillboardId b) const;
  std::span<const Posting> inverted(TrajectoryId t) const;

  Cost cost(BillboardId b) const;
  std::span<const Cost> costs() const { return costs_; }
  Cost total_cost(std::span<const BillboardId> set) const;

  // I(S) over the union of the members' forward lists. Duplicates are
  // ignored; unknown ids throw UnknownIdError.
  double influence(std::span<const BillboardId> set) const;

  // I({b}): the sum of b's forward-list weights.
  double standalone_influence(BillboardId b) const;

  // Universe as a set: 0..billboard_count()-1.
  BillboardSet all_billboards() const;

  const IndexStats& stats() const { return stats_; }

  void check_id(BillboardId b) const;

 private:
  InfluenceIndex() = default;
  void finish();

  std::vector<Cost> costs_;
  std::vector<std::vector<Posting>> forward_;
  std::vector<std::vector<Posting>> inverted_;
  std::vector<double> standalone_;
  IndexStats stats_;
};

// Survival products pi_t = prod_{b in S} (1 - pr(b, t)) for the trajectories
// touched by S, plus the running total I(S). Single-owner mutable state.
class SurvivalCache {
 public:
  explicit SurvivalCache(const InfluenceIndex& index);

  // I(S + b) - I(S). Throws DuplicateIdError when b is already in S.
  double marginal(BillboardId b) const;

  // Adds b to S. Returns the marginal gain that was applied.
  double commit(BillboardId b);

  // Back to S = {} in time proportional to the touched trajectories.
  void reset();

  bool contains(BillboardId b) const { return in_set_[b] != 0; }
  double total() const { return total_; }
  Cost cost() const { return cost_; }
  double survival(TrajectoryId t) const { return survival_[t]; }

  // Members in commit order.
  const std::vector<BillboardId>& members() const { return members_; }
  BillboardSet members_sorted() const;

  const InfluenceIndex& index() const { return *index_; }

 private:
  const InfluenceIndex* index_;
  std::vector<double> survival_;
  std::vector<char> in_set_;
  std::vector<TrajectoryId> touched_;
  std::vector<BillboardId> members_;
  double total_ = 0.0;
  Cost cost_ = 0;
};

}  // namespace tip
