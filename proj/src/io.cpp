#include "specsim/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace specsim::io {

namespace {

using nlohmann::json;

const json* find(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

template <typename T>
T require(const json& j, const std::string& key, const std::string& path) {
  const json* v = find(j, key);
  if (!v) throw ConfigError(path + key, "missing required field");
  try {
    return v->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + key, "wrong type");
  }
}

template <typename T>
T optional_or(const json& j, const std::string& key, const std::string& path, T fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  try {
    return v->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + key, "wrong type");
  }
}

}  // namespace

json topology_to_json(const Deployment& d, const InterferenceGraph& g) {
  json j;
  j["n"] = g.n_nodes();
  j["area"] = {d.area.width, d.area.height};
  json positions = json::array();
  for (const auto& p : d.positions) positions.push_back({p.x, p.y});
  j["positions"] = positions;
  j["radius"] = g.radius();
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  j["edges"] = edges;
  return j;
}

void write_topology(const std::string& path, const Deployment& d, const InterferenceGraph& g) {
  write_text_file(path, topology_to_json(d, g).dump(2) + "\n");
}

InterferenceGraph topology_from_json(const json& j) {
  const int n = require<int>(j, "n", "topology.");
  if (const json* edges = find(j, "edges")) {
    std::vector<std::pair<int, int>> list;
    for (const auto& e : *edges) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("topology.edges", "each edge is a pair");
      list.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return load_graph(list, n);
  }
  if (const json* positions = find(j, "positions")) {
    const double radius = require<double>(j, "radius", "topology.");
    Deployment d;
    d.area.width = d.area.height = 0.0;
    if (const json* area = find(j, "area")) {
      d.area.width = (*area)[0].get<double>();
      d.area.height = (*area)[1].get<double>();
    }
    for (const auto& p : *positions) d.positions.push_back({p[0].get<double>(), p[1].get<double>()});
    if (static_cast<int>(d.positions.size()) != n)
      throw ConfigError("topology.positions", "length does not match n");
    return build_graph(d, radius);
  }
  throw ConfigError("topology", "either edges or positions+radius required");
}

InterferenceGraph read_topology(const std::string& path) {
  return topology_from_json(read_json_file(path));
}

ChannelSpec channel_spec_from_json(const json& j) {
  ChannelSpec spec;
  spec.preset = optional_or<std::string>(j, "preset", "channels.", "");
  spec.m = optional_or<int>(j, "m", "channels.", 3);
  spec.allow_unequal_means = optional_or<bool>(j, "allow_unequal_means", "channels.", false);
  spec.label = optional_or<std::string>(j, "label", "channels.", "");
  if (spec.preset.empty()) {
    spec.rates = require<std::vector<double>>(j, "rates", "channels.");
    const json* probs = find(j, "probabilities");
    if (!probs || !probs->is_array() || probs->empty())
      throw ConfigError("channels.probabilities", "missing or empty");
    if (probs->front().is_array()) {
      for (const auto& row : *probs) spec.probabilities.push_back(row.get<std::vector<double>>());
    } else {
      spec.probabilities.push_back(probs->get<std::vector<double>>());
    }
  }
  return spec;
}

ChannelSpec read_channel_spec(const std::string& path) {
  return channel_spec_from_json(read_json_file(path));
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.label = optional_or<std::string>(j, "label", "", std::string("base"));

  if (const json* topo = find(j, "topology")) {
    cfg.topology.file = optional_or<std::string>(*topo, "file", "topology.", "");
    cfg.topology.n = optional_or<int>(*topo, "n", "topology.", cfg.topology.n);
    cfg.topology.radius = optional_or<double>(*topo, "radius", "topology.", cfg.topology.radius);
    if (const json* area = find(*topo, "area")) {
      if (!area->is_array() || area->size() != 2)
        throw ConfigError("topology.area", "expected [width, height]");
      cfg.topology.area = {(*area)[0].get<double>(), (*area)[1].get<double>()};
    }
    if (find(*topo, "seed")) cfg.topology.seed = require<uint64_t>(*topo, "seed", "topology.");
  }

  if (const json* ch = find(j, "channels")) cfg.channels = channel_spec_from_json(*ch);

  if (const json* algos = find(j, "algorithms")) {
    cfg.algorithms.clear();
    for (const auto& a : *algos) {
      const auto name = a.get<std::string>();
      const auto algo = algorithm_from_string(name);
      if (!algo) throw ConfigError("algorithms", "unknown algorithm `" + name + "`");
      cfg.algorithms.push_back(*algo);
    }
  }

  if (const json* sla = find(j, "sla")) {
    cfg.sla.step_size = optional_or<double>(*sla, "alpha", "sla.", cfg.sla.step_size);
    cfg.sla.max_iterations = optional_or<int>(*sla, "max_iters", "sla.", cfg.sla.max_iterations);
    cfg.sla.convergence_threshold =
        optional_or<double>(*sla, "threshold", "sla.", cfg.sla.convergence_threshold);
  }

  if (const json* base = find(j, "baseline")) {
    cfg.baseline.beta = optional_or<double>(*base, "beta", "baseline.", cfg.baseline.beta);
    cfg.baseline.update_prob = optional_or<double>(*base, "p", "baseline.", cfg.baseline.update_prob);
    cfg.baseline.iterations =
        optional_or<int>(*base, "iterations", "baseline.", cfg.baseline.iterations);
  }

  cfg.trials = optional_or<int>(j, "trials", "", cfg.trials);
  cfg.master_seed = optional_or<uint64_t>(j, "seed", "", cfg.master_seed);
  cfg.workers = optional_or<int>(j, "workers", "", cfg.workers);

  if (const json* sweep = find(j, "sweep")) {
    SweepSpec spec;
    const auto axis = require<std::string>(*sweep, "axis", "sweep.");
    const json* points = find(*sweep, "points");
    if (!points || !points->is_array() || points->empty())
      throw ConfigError("sweep.points", "non-empty point list required");
    if (axis == "channels") {
      for (const auto& p : *points) {
        SweepChannelPoint point;
        point.label = require<std::string>(p, "label", "sweep.points.");
        point.channels = channel_spec_from_json(p.at("channels"));
        spec.channel_points.push_back(std::move(point));
      }
    } else if (axis == "scale") {
      for (const auto& p : *points) spec.n_values.push_back(p.get<int>());
    } else {
      throw ConfigError("sweep.axis", "expected `channels` or `scale`");
    }
    cfg.sweep = std::move(spec);
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig read_config(const std::string& path) {
  return config_from_json(read_json_file(path));
}

json ne_report_to_json(const NeReport& report) {
  json j;
  j["ne_count"] = report.equilibria.size();
  j["min_U"] = report.min_aggregate_utility();
  j["bound"] = report.bound;
  j["profiles_checked"] = report.profiles_checked;
  json rows = json::array();
  for (const auto& e : report.equilibria) {
    json row;
    row["profile"] = e.profile;
    row["utilities"] = e.utilities;
    row["U"] = e.aggregate_utility;
    row["phi"] = e.potential;
    row["bound"] = report.bound;
    rows.push_back(std::move(row));
  }
  j["equilibria"] = std::move(rows);
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace specsim::io
