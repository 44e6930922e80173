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


#include "tip/serialization.hpp"

#include "json.hpp"
#include "tip/errors.hpp"

namespace tip {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

std::string partition_to_json(const Partition& partition) {
  ordered j;
  j["version"] = 1;
  j["theta"] = partition.theta;
  j["mode"] = std::string(to_string(partition.mode));
  j["clusters"] = ordered::array();
  for (const auto& c : partition.clusters) j["clusters"].push_back(c.members);
  return j.dump() + "\n";
}

Partition partition_from_json(std::string_view text) {
  Partition p;
  try {
    const auto j = json::parse(text);
    if (j.value("version", 1) != 1) throw ConfigError("unsupported partition version");
    p.theta = j.at("theta").get<double>();
    p.mode = parse_overlap_mode(j.at("mode").get<std::string>());
    std::uint32_t id = 0;
    for (const auto& c : j.at("clusters")) {
      p.clusters.push_back({id++, make_set(c.get<BillboardSet>())});
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad partition file: ") + e.what());
  }
  return p;
}

std::string result_to_json(const ResultRecord& r, bool include_timing) {
  ordered j;
  j["algorithm"] = r.algorithm;
  j["budget"] = r.budget;
  j["lambda"] = r.lambda;
  j["theta"] = r.theta ? ordered(*r.theta) : ordered(nullptr);
  j["chosen_ids"] = r.chosen_ids;
  j["cost"] = r.cost;
  j["influence"] = r.influence;
  j["wall_ms"] = include_timing ? r.wall_ms : 0.0;
  j["enum_calls"] = r.enum_calls;
  j["estimator_calls"] = r.estimator_calls;
  return j.dump(2) + "\n";
}

std::string index_to_json(const InfluenceIndex& index, double lambda,
                          const ProbabilityModel& model) {
  ordered j;
  j["version"] = 1;
  j["lambda"] = lambda;
  j["model"] = to_string(model);
  j["trajectory_count"] = index.trajectory_count();
  j["costs"] = std::vector<Cost>(index.costs().begin(), index.costs().end());
  auto& forward = j["forward"] = ordered::array();
  for (BillboardId b = 0; b < index.billboard_count(); ++b) {
    auto row = ordered::array();
    for (const auto& e : index.forward(b)) row.push_back({e.id, e.probability});
    forward.push_back(std::move(row));
  }
  const auto& s = index.stats();
  j["stats"] = {{"billboards", s.billboards},
                {"trajectories", s.trajectories},
                {"points", s.points},
                {"grid_cells", s.grid_cells},
                {"postings", s.postings},
                {"max_forward_length", s.max_forward_length},
                {"mean_forward_length", s.mean_forward_length},
                {"influenced_trajectories", s.influenced_trajectories}};
  return j.dump() + "\n";
}

IndexFile index_from_json(std::string_view text) {
  try {
    const auto j = json::parse(text);
    if (j.value("version", 1) != 1) throw ConfigError("unsupported index version");
    std::vector<std::vector<Posting>> forward;
    for (const auto& row : j.at("forward")) {
      auto& list = forward.emplace_back();
      for (const auto& e : row) list.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<double>()});
    }
    return IndexFile{
        InfluenceIndex::from_forward_lists(j.at("costs").get<std::vector<Cost>>(),
                                           j.at("trajectory_count").get<std::size_t>(),
                                           std::move(forward)),
        j.at("lambda").get<double>(), parse_probability_model(j.at("model").get<std::string>())};
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad index file: ") + e.what());
  }
}

}  // namespace tip
