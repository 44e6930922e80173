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


#include "tip/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "tip/errors.hpp"
#include "tip/rng.hpp"

namespace tip {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path resolve(const fs::path& manifest_path, const std::string& file) {
  const fs::path p(file);
  return p.is_absolute() ? p : manifest_path.parent_path() / p;
}

struct RawBillboard {
  std::int64_t id;
  double a;
  double b;
  double panel;
  std::optional<Cost> cost;
};

struct RawTrajectory {
  std::int64_t id;
  std::vector<std::pair<double, double>> points;
};

std::vector<RawBillboard> parse_billboards(const std::string& text, const std::string& source,
                                           CoordinateKind kind, bool& has_costs) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> header;
  std::string header_line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header_line = line;
      break;
    }
  }
  if (header_line.empty()) throw ParseError(source, line_no, "empty billboard file");
  header = split(header_line);

  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (header[k] == name) return k;
    }
    return std::nullopt;
  };
  const auto c_id = column("id");
  const auto c_a = column(kind == CoordinateKind::kLatLng ? "lat" : "x");
  const auto c_b = column(kind == CoordinateKind::kLatLng ? "lng" : "y");
  const auto c_panel = column("panel_size");
  const auto c_cost = column("cost");
  if (!c_id || !c_a || !c_b || !c_panel) {
    throw ParseError(source, line_no,
                     kind == CoordinateKind::kLatLng
                         ? "header must contain id,lat,lng,panel_size"
                         : "header must contain id,x,y,panel_size");
  }
  has_costs = c_cost.has_value();

  std::vector<RawBillboard> rows;
  std::unordered_set<std::int64_t> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()));
    }
    RawBillboard r{};
    if (!parse_number(fields[*c_id], r.id) || r.id < 0) {
      throw ParseError(source, line_no, "bad id '" + std::string(fields[*c_id]) + "'");
    }
    if (!parse_number(fields[*c_a], r.a) || !parse_number(fields[*c_b], r.b) ||
        !std::isfinite(r.a) || !std::isfinite(r.b)) {
      throw ParseError(source, line_no, "bad coordinates");
    }
    if (!parse_number(fields[*c_panel], r.panel) || !(r.panel > 0.0)) {
      throw ParseError(source, line_no, "panel_size must be a positive number");
    }
    if (c_cost) {
      Cost c = 0;
      if (!parse_number(fields[*c_cost], c) || c < 0) {
        throw ParseError(source, line_no, "cost must be a non-negative integer");
      }
      r.cost = c;
    }
    if (!seen.insert(r.id).second) {
      throw DuplicateIdError(source + ":" + std::to_string(line_no) + ": duplicate billboard id " +
                             std::to_string(r.id));
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw ParseError(source, line_no, "billboard file has no rows");
  return rows;
}

std::vector<RawTrajectory> parse_trajectories(const std::string& text,
                                              const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<RawTrajectory> rows;
  std::unordered_set<std::int64_t> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    RawTrajectory t;
    try {
      const auto j = json::parse(line);
      t.id = j.at("id").get<std::int64_t>();
      for (const auto& p : j.at("points")) {
        if (!p.is_array() || p.size() != 2) throw ParseError(source, line_no, "point must be a pair");
        t.points.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (t.id < 0) throw ParseError(source, line_no, "negative trajectory id");
    if (t.points.empty()) throw ParseError(source, line_no, "empty trajectory");
    for (const auto& [a, b] : t.points) {
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw ParseError(source, line_no, "non-finite coordinate");
      }
    }
    if (!seen.insert(t.id).second) {
      throw DuplicateIdError(source + ":" + std::to_string(line_no) +
                             ": duplicate trajectory id " + std::to_string(t.id));
    }
    rows.push_back(std::move(t));
  }
  return rows;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string_view to_string(CoordinateKind kind) {
  return kind == CoordinateKind::kLatLng ? "latlng" : "planar";
}

CoordinateKind parse_coordinate_kind(std::string_view text) {
  if (text == "latlng") return CoordinateKind::kLatLng;
  if (text == "planar") return CoordinateKind::kPlanar;
  throw ConfigError("unknown coordinate kind '" + std::string(text) + "'");
}

DatasetManifest DatasetManifest::read(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  DatasetManifest m;
  try {
    m.version = j.value("version", 1);
    if (m.version != 1) throw ConfigError("unsupported manifest version " + std::to_string(m.version));
    m.billboards = j.at("billboards").get<std::string>();
    m.trajectories = j.at("trajectories").get<std::string>();
    if (j.contains("coordinates")) {
      m.coordinates = parse_coordinate_kind(j["coordinates"].get<std::string>());
    }
    if (j.contains("ref_lat")) m.ref_lat = j["ref_lat"].get<double>();
    if (j.contains("ref_lng")) m.ref_lng = j["ref_lng"].get<double>();
    if (j.contains("billboard_count")) m.billboard_count = j["billboard_count"].get<std::size_t>();
    if (j.contains("trajectory_count")) {
      m.trajectory_count = j["trajectory_count"].get<std::size_t>();
    }
    if (j.contains("checksum")) m.checksum = j["checksum"].get<std::string>();
    if (j.contains("cost_reference")) m.cost_reference = j["cost_reference"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return m;
}

void DatasetManifest::write(const fs::path& path) const {
  json j;
  j["version"] = version;
  j["billboards"] = billboards;
  j["trajectories"] = trajectories;
  j["coordinates"] = std::string(to_string(coordinates));
  if (ref_lat) j["ref_lat"] = *ref_lat;
  if (ref_lng) j["ref_lng"] = *ref_lng;
  if (billboard_count) j["billboard_count"] = *billboard_count;
  if (trajectory_count) j["trajectory_count"] = *trajectory_count;
  if (checksum) j["checksum"] = *checksum;
  if (cost_reference) j["cost_reference"] = *cost_reference;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::string dataset_checksum(const fs::path& billboards, const fs::path& trajectories) {
  std::uint64_t h = 14695981039346656037ULL;
  h = fnv1a(read_file(billboards), h);
  h = fnv1a(read_file(trajectories), h);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Dataset load_dataset(const fs::path& manifest_path) {
  const auto m = DatasetManifest::read(manifest_path);
  const auto bpath = resolve(manifest_path, m.billboards);
  const auto tpath = resolve(manifest_path, m.trajectories);

  Dataset d;
  d.coordinates = m.coordinates;
  d.cost_reference = m.cost_reference;
  const auto raw_b = parse_billboards(read_file(bpath), bpath.string(), m.coordinates, d.has_costs);
  const auto raw_t = parse_trajectories(read_file(tpath), tpath.string());

  if (m.billboard_count && *m.billboard_count != raw_b.size()) {
    throw ConfigError("manifest lists " + std::to_string(*m.billboard_count) +
                      " billboards, file has " + std::to_string(raw_b.size()));
  }
  if (m.trajectory_count && *m.trajectory_count != raw_t.size()) {
    throw ConfigError("manifest lists " + std::to_string(*m.trajectory_count) +
                      " trajectories, file has " + std::to_string(raw_t.size()));
  }
  if (m.checksum && *m.checksum != dataset_checksum(bpath, tpath)) {
    throw ConfigError("checksum mismatch for " + manifest_path.string());
  }

  if (m.coordinates == CoordinateKind::kLatLng) {
    double lat = 0.0;
    double lng = 0.0;
    for (const auto& r : raw_b) {
      lat += r.a;
      lng += r.b;
    }
    lat /= static_cast<double>(raw_b.size());
    lng /= static_cast<double>(raw_b.size());
    d.projection = Projection(m.ref_lat.value_or(lat), m.ref_lng.value_or(lng));
  }
  auto to_point = [&](double a, double b) {
    return m.coordinates == CoordinateKind::kLatLng ? d.projection.project({a, b}) : GeoPoint{a, b};
  };

  for (std::size_t i = 0; i < raw_b.size(); ++i) {
    const auto& r = raw_b[i];
    d.billboards.push_back(
        {static_cast<BillboardId>(i), to_point(r.a, r.b), r.panel, r.cost.value_or(0)});
    d.billboard_source_ids.push_back(r.id);
  }
  for (std::size_t j = 0; j < raw_t.size(); ++j) {
    Trajectory t{static_cast<TrajectoryId>(j), {}};
    t.points.reserve(raw_t[j].points.size());
    for (const auto& [a, b] : raw_t[j].points) t.points.push_back(to_point(a, b));
    d.trajectories.push_back(std::move(t));
    d.trajectory_source_ids.push_back(raw_t[j].id);
  }
  return d;
}

ProblemInstance Dataset::instance(double lambda, const ProbabilityModel& model,
                                  Cost budget) const {
  ProblemInstance inst{billboards, trajectories, lambda, model, budget};
  inst.validate();
  return inst;
}

std::vector<std::int64_t> Dataset::source_ids(std::span<const BillboardId> set) const {
  std::vector<std::int64_t> out;
  out.reserve(set.size());
  for (auto b : set) {
    if (b >= billboard_source_ids.size()) throw UnknownIdError("unknown billboard " + std::to_string(b));
    out.push_back(billboard_source_ids[b]);
  }
  return out;
}

ProblemInstance load_instance(const fs::path& manifest_path, double lambda,
                              const ProbabilityModel& model, Cost budget) {
  return load_dataset(manifest_path).instance(lambda, model, budget);
}

DatasetManifest write_dataset(const Dataset& dataset, const fs::path& dir) {
  fs::create_directories(dir);
  DatasetManifest m;
  m.coordinates = dataset.coordinates;
  const bool latlng = dataset.coordinates == CoordinateKind::kLatLng;
  if (latlng) {
    m.ref_lat = dataset.projection.ref_lat();
    m.ref_lng = dataset.projection.ref_lng();
  }
  auto coords = [&](const GeoPoint& p) {
    if (!latlng) return format_double(p.x) + "," + format_double(p.y);
    const auto ll = dataset.projection.unproject(p);
    return format_double(ll.lat) + "," + format_double(ll.lng);
  };
  auto source_id = [](const std::vector<std::int64_t>& ids, std::size_t k) {
    return k < ids.size() ? ids[k] : static_cast<std::int64_t>(k);
  };

  std::string b = latlng ? "id,lat,lng,panel_size" : "id,x,y,panel_size";
  b += dataset.has_costs ? ",cost\n" : "\n";
  for (std::size_t i = 0; i < dataset.billboards.size(); ++i) {
    const auto& bb = dataset.billboards[i];
    b += std::to_string(source_id(dataset.billboard_source_ids, i)) + "," + coords(bb.location) +
         "," + format_double(bb.panel_size);
    if (dataset.has_costs) b += "," + std::to_string(bb.cost);
    b += '\n';
  }
  std::string t;
  for (std::size_t j = 0; j < dataset.trajectories.size(); ++j) {
    t += "{\"id\":" + std::to_string(source_id(dataset.trajectory_source_ids, j)) +
         ",\"points\":[";
    const auto& pts = dataset.trajectories[j].points;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k) t += ',';
      t += "[" + coords(pts[k]) + "]";
    }
    t += "]}\n";
  }

  const auto bpath = dir / m.billboards;
  const auto tpath = dir / m.trajectories;
  for (const auto& [path, text] : {std::pair{bpath, &b}, std::pair{tpath, &t}}) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << *text;
  }
  m.billboard_count = dataset.billboards.size();
  m.trajectory_count = dataset.trajectories.size();
  m.checksum = dataset_checksum(bpath, tpath);
  m.cost_reference = dataset.cost_reference;
  m.write(dir / "manifest.json");
  return m;
}

Cost cost_from_influence(double influence, double beta, const CostModelParams& params) {
  const auto steps = static_cast<Cost>(std::floor(beta * influence / params.divisor));
  return std::max<Cost>(steps, 1) * params.unit;
}

std::vector<Cost> assign_costs(const InfluenceIndex& index, std::uint64_t seed,
                               const CostModelParams& params) {
  if (!(params.beta_lo > 0.0 && params.beta_lo <= params.beta_hi)) {
    throw ConfigError("beta range must satisfy 0 < lo <= hi");
  }
  if (!(params.divisor > 0.0) || params.unit <= 0) {
    throw ConfigError("cost divisor and unit must be positive");
  }
  Rng rng(seed);
  std::vector<Cost> costs(index.billboard_count());
  for (BillboardId b = 0; b < costs.size(); ++b) {
    const double beta = rng.uniform(params.beta_lo, params.beta_hi);
    costs[b] = cost_from_influence(index.standalone_influence(b), beta, params);
  }
  return costs;
}

void SyntheticConfig::validate() const {
  if (!seed) throw ConfigError("synthetic generation requires a seed");
  if (!(width_km > 0.0 && height_km > 0.0)) throw ConfigError("bounding box must be positive");
  if (billboard_count == 0) throw ConfigError("billboard count must be positive");
  if (!(mean_length_km > 0.0 && max_length_km > 0.0)) {
    throw ConfigError("trajectory lengths must be positive");
  }
  if (!(step_m > 0.0)) throw ConfigError("step must be positive");
  if (hotspot_count == 0) throw ConfigError("hotspot count must be positive");
  if (!(hotspot_spread_m >= 0.0)) throw ConfigError("hotspot spread must be non-negative");
  if (!(hotspot_bias >= 0.0 && hotspot_bias <= 1.0)) {
    throw ConfigError("hotspot bias must be in [0, 1]");
  }
  if (!(min_panel_size > 0.0 && min_panel_size <= max_panel_size)) {
    throw ConfigError("panel size range must satisfy 0 < min <= max");
  }
}

Dataset generate_synthetic(const SyntheticConfig& config) {
  config.validate();
  Rng rng(*config.seed);
  const double w = config.width_km * 1000.0;
  const double h = config.height_km * 1000.0;
  auto clamp_point = [&](GeoPoint p) {
    return GeoPoint{std::clamp(p.x, 0.0, w), std::clamp(p.y, 0.0, h)};
  };

  std::vector<GeoPoint> hotspots(config.hotspot_count);
  for (auto& c : hotspots) c = {rng.uniform(0.1 * w, 0.9 * w), rng.uniform(0.1 * h, 0.9 * h)};
  auto near_hotspot = [&] {
    const auto& c = hotspots[rng.below(hotspots.size())];
    const double dx = rng.normal() * config.hotspot_spread_m;
    const double dy = rng.normal() * config.hotspot_spread_m;
    return clamp_point({c.x + dx, c.y + dy});
  };

  Dataset d;
  d.coordinates = CoordinateKind::kLatLng;
  d.projection = Projection(config.ref_lat, config.ref_lng);
  const GeoPoint centre{w / 2.0, h / 2.0};
  auto centred = [&](GeoPoint p) { return GeoPoint{p.x - centre.x, p.y - centre.y}; };

  for (std::size_t i = 0; i < config.billboard_count; ++i) {
    const auto loc = near_hotspot();
    double panel = rng.uniform(config.min_panel_size, config.max_panel_size);
    panel = std::max(config.min_panel_size, std::round(panel * 10.0) / 10.0);
    d.billboards.push_back({static_cast<BillboardId>(i), centred(loc), panel, 0});
    d.billboard_source_ids.push_back(static_cast<std::int64_t>(i));
  }

  constexpr double kTurnSigma = 0.35;
  for (std::size_t j = 0; j < config.trajectory_count; ++j) {
    GeoPoint p = rng.uniform() < config.hotspot_bias
                     ? near_hotspot()
                     : GeoPoint{rng.uniform(0.0, w), rng.uniform(0.0, h)};
    const double length =
        std::min(rng.exponential(config.mean_length_km), config.max_length_km) * 1000.0;
    double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
    Trajectory t{static_cast<TrajectoryId>(j), {centred(p)}};
    for (double walked = 0.0; walked < length;) {
      const double step = std::min(config.step_m, length - walked);
      heading += rng.normal() * kTurnSigma;
      p.x += step * std::cos(heading);
      p.y += step * std::sin(heading);
      // Reflect off the bounding box so step lengths are preserved.
      if (p.x < 0.0 || p.x > w) {
        p.x = p.x < 0.0 ? -p.x : 2.0 * w - p.x;
        heading = std::numbers::pi - heading;
      }
      if (p.y < 0.0 || p.y > h) {
        p.y = p.y < 0.0 ? -p.y : 2.0 * h - p.y;
        heading = -heading;
      }
      t.points.push_back(centred(p));
      walked += step;
    }
    d.trajectories.push_back(std::move(t));
    d.trajectory_source_ids.push_back(static_cast<std::int64_t>(j));
  }
  return d;
}

double path_length(const Trajectory& t) {
  double total = 0.0;
  for (std::size_t k = 1; k < t.points.size(); ++k) total += distance(t.points[k - 1], t.points[k]);
  return total;
}

}  // namespace tip
