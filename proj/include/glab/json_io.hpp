#pragma once

#include <string>

#include <json.hpp>

#include "glab/construction.hpp"
#include "glab/forcing.hpp"
#include "glab/measure.hpp"
#include "glab/oracle.hpp"
#include "glab/prefix.hpp"

namespace glab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// All parsers throw parse_error on malformed documents.

Json prefix_to_json(const Prefix& p);
Prefix prefix_from_json(const Json& j);

Json oracle_to_json(const PartialOracle& o);
PartialOracle oracle_from_json(const Json& j);

Json operator_to_json(const EnumOperator& op);
EnumOperator operator_from_json(const Json& j);

Json schedules_to_json(const std::vector<CESchedule>& schedules);
std::vector<CESchedule> schedules_from_json(const Json& j);

Json marker_trace_to_json(const MarkerTrace& t);
MarkerTrace marker_trace_from_json(const Json& j);

Json wiggle_tree_to_json(const WiggleTree& w);

Json condition_to_json(const Condition& c);
Condition condition_from_json(const Json& j);

Json tower_to_json(const Tower& t);

// Plot-ready CSV: floor,k_i,k_{i+1},mu_halt,mu_out0,mu_out1,mu_multi with
// rationals rendered "p/q".
std::string tower_stats_csv(const std::vector<FloorStats>& stats);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

Json parse_json_file(const std::string& path);

}  // namespace glab
