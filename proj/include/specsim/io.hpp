#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "specsim/errors.hpp"
#include "specsim/game.hpp"
#include "specsim/harness.hpp"
#include "specsim/topology.hpp"

namespace specsim::io {

using specsim::ConfigError;

nlohmann::json topology_to_json(const Deployment& d, const InterferenceGraph& g);
void write_topology(const std::string& path, const Deployment& d, const InterferenceGraph& g);

// Builds the graph from the explicit edge list when present, otherwise from
// positions and radius.
InterferenceGraph topology_from_json(const nlohmann::json& j);
InterferenceGraph read_topology(const std::string& path);

ChannelSpec channel_spec_from_json(const nlohmann::json& j);
ChannelSpec read_channel_spec(const std::string& path);

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig read_config(const std::string& path);

nlohmann::json ne_report_to_json(const NeReport& report);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Canonical number formatting shared by every CSV/report writer, so repeated
// runs of one config are byte-identical.
std::string format_double(double v);

}  // namespace specsim::io
