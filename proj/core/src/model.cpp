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

#include "tip/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "tip/errors.hpp"

namespace tip {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ConfigError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

ProbabilityModel parse_probability_model(std::string_view text) {
  if (text == "panel-half") return PanelHalfMax{};
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("unknown probability model '" + std::string(text) + "'");
  }
  const auto kind = text.substr(0, colon);
  const auto arg = text.substr(colon + 1);
  if (kind == "uniform") {
    const double p = parse_number(arg, "uniform probability");
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("uniform probability must be in (0, 1]");
    return UniformProbability{p};
  }
  if (kind == "panel") {
    const double area = parse_number(arg, "panel area");
    if (!(area > 0.0)) throw ConfigError("panel area must be positive");
    return PanelOverArea{area};
  }
  throw ConfigError("unknown probability model '" + std::string(text) + "'");
}

std::string to_string(const ProbabilityModel& model) {
  return std::visit(Overloaded{
                        [](const UniformProbability& m) { return "uniform:" + shortest(m.p); },
                        [](const PanelOverArea& m) { return "panel:" + shortest(m.area); },
                        [](const PanelHalfMax&) { return std::string("panel-half"); },
                    },
                    model);
}

double max_panel_size(std::span<const Billboard> universe) {
  double best = 0.0;
  for (const auto& b : universe) best = std::max(best, b.panel_size);
  return best;
}

void validate_model(const ProbabilityModel& model, std::span<const Billboard> universe) {
  for (const auto& b : universe) {
    if (!(b.panel_size > 0.0) || !std::isfinite(b.panel_size)) {
      throw ConfigError("billboard " + std::to_string(b.id) + " has non-positive panel size");
    }
  }
  std::visit(Overloaded{
                 [](const UniformProbability& m) {
                   if (!(m.p > 0.0 && m.p <= 1.0)) {
                     throw ConfigError("uniform probability must be in (0, 1]");
                   }
                 },
                 [&](const PanelOverArea& m) {
                   if (!(m.area > max_panel_size(universe))) {
                     throw ConfigError("panel area A must exceed every panel size");
                   }
                 },
                 [](const PanelHalfMax&) {},
             },
             model);
}

double meet_probability(const ProbabilityModel& model, const Billboard& b, double max_panel) {
  return std::visit(Overloaded{
                        [](const UniformProbability& m) { return m.p; },
                        [&](const PanelOverArea& m) { return b.panel_size / m.area; },
                        [&](const PanelHalfMax&) {
                          return max_panel > 0.0 ? b.panel_size / (2.0 * max_panel) : 0.0;
                        },
                    },
                    model);
}

void ProblemInstance::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be positive");
  if (budget < 0) throw ConfigError("budget must be non-negative");
  for (std::size_t i = 0; i < billboards.size(); ++i) {
    const auto& b = billboards[i];
    if (b.id != i) throw ConfigError("billboard ids must be dense and ordered");
    if (b.cost < 0) throw ConfigError("billboard " + std::to_string(i) + " has negative cost");
    if (!std::isfinite(b.location.x) || !std::isfinite(b.location.y)) {
      throw ConfigError("billboard " + std::to_string(i) + " has non-finite location");
    }
  }
  for (std::size_t j = 0; j < trajectories.size(); ++j) {
    const auto& t = trajectories[j];
    if (t.id != j) throw ConfigError("trajectory ids must be dense and ordered");
    if (t.points.empty()) throw ConfigError("trajectory " + std::to_string(j) + " is empty");
    for (const auto& p : t.points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw ConfigError("trajectory " + std::to_string(j) + " has a non-finite point");
      }
    }
  }
  validate_model(model, billboards);
}

bool influences(const Billboard& b, const Trajectory& t, double lambda) {
  return std::any_of(t.points.begin(), t.points.end(),
                     [&](const GeoPoint& p) { return within(p, b.location, lambda); });
}

double pair_probability(const ProblemInstance& instance, const Billboard& b,
                        const Trajectory& t) {
  validate_model(instance.model, instance.billboards);
  if (!influences(b, t, instance.lambda)) return 0.0;
  return meet_probability(instance.model, b, max_panel_size(instance.billboards));
}

double set_probability(std::span<const double> pairwise) {
  double survival = 1.0;
  for (double p : pairwise) survival *= 1.0 - p;
  return 1.0 - survival;
}

double influence_naive(const ProblemInstance& instance, std::span<const BillboardId> set) {
  const auto members = make_set(set);
  for (auto id : members) {
    if (id >= instance.billboards.size()) {
      throw UnknownIdError("unknown billboard id " + std::to_string(id));
    }
  }
  validate_model(instance.model, instance.billboards);
  const double max_panel = max_panel_size(instance.billboards);
  double total = 0.0;
  std::vector<double> pairwise;
  for (const auto& t : instance.trajectories) {
    pairwise.clear();
    for (auto id : members) {
      const auto& b = instance.billboards[id];
      if (influences(b, t, instance.lambda)) {
        pairwise.push_back(meet_probability(instance.model, b, max_panel));
      }
    }
    total += set_probability(pairwise);
  }
  return total;
}

BillboardSet make_set(std::span<const BillboardId> ids) {
  BillboardSet out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tip
