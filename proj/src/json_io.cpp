#include "glab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "glab/errors.hpp"
#include "glab/ratio.hpp"

namespace glab {

namespace {

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end())
    throw parse_error(std::string("missing field \"") + name + "\"");
  return *it;
}

}  // namespace

Json prefix_to_json(const Prefix& p) {
  return Json{{"length", p.size()}, {"bits_hex", p.to_hex()}};
}

Prefix prefix_from_json(const Json& j) {
  if (!j.is_object()) throw parse_error("prefix: expected an object");
  return Prefix::from_hex(field(j, "bits_hex").get<std::string>(),
                          field(j, "length").get<std::size_t>());
}

Json oracle_to_json(const PartialOracle& o) {
  Json entries = Json::array();
  for (const auto& [n, c] : o.entries())
    entries.push_back(Json::array({n, c.value, c.delay}));
  Json out{{"entries", std::move(entries)}};
  if (o.declared_target()) out["target"] = prefix_to_json(*o.declared_target());
  return out;
}

PartialOracle oracle_from_json(const Json& j) {
  if (!j.is_object()) throw parse_error("oracle: expected an object");
  std::vector<OracleEntry> entries;
  for (const auto& e : field(j, "entries")) {
    if (!e.is_array() || e.size() != 3)
      throw parse_error("oracle entry: expected [input, value, delay]");
    entries.push_back({e[0].get<std::uint64_t>(), e[1].get<int>(),
                       e[2].get<std::uint64_t>()});
  }
  std::optional<Prefix> target;
  if (j.contains("target")) target = prefix_from_json(j["target"]);
  return PartialOracle::from_entries(entries, std::move(target));
}

Json operator_to_json(const EnumOperator& op) {
  Json axioms = Json::array();
  for (const auto& a : op.axioms) {
    Json fragment = Json::array();
    for (const auto& [i, v] : a.fragment)
      fragment.push_back(Json::array({i, v}));
    axioms.push_back(Json{{"fragment", std::move(fragment)},
                          {"input", a.input},
                          {"output", a.output},
                          {"stage", a.stage}});
  }
  return Json{{"axioms", std::move(axioms)}};
}

EnumOperator operator_from_json(const Json& j) {
  if (!j.is_object()) throw parse_error("operator: expected an object");
  EnumOperator op;
  for (const auto& a : field(j, "axioms")) {
    Axiom axiom;
    for (const auto& kv : field(a, "fragment")) {
      if (!kv.is_array() || kv.size() != 2)
        throw parse_error("axiom fragment: expected [bit, value]");
      auto [it, inserted] =
          axiom.fragment.emplace(kv[0].get<std::uint64_t>(), kv[1].get<int>());
      if (!inserted) throw parse_error("axiom fragment: duplicate bit");
    }
    axiom.input = field(a, "input").get<std::uint64_t>();
    axiom.output = field(a, "output").get<int>();
    axiom.stage = a.value("stage", std::uint64_t{0});
    op.axioms.push_back(std::move(axiom));
  }
  return op;
}

Json schedules_to_json(const std::vector<CESchedule>& schedules) {
  Json out = Json::array();
  for (const auto& sched : schedules) {
    Json one = Json::array();
    for (const auto& [stage, values] : sched.by_stage)
      one.push_back(Json{{"stage", stage}, {"values", values}});
    out.push_back(std::move(one));
  }
  return out;
}

std::vector<CESchedule> schedules_from_json(const Json& j) {
  if (!j.is_array()) throw parse_error("schedules: expected an array");
  std::vector<CESchedule> out;
  for (const auto& one : j) {
    CESchedule sched;
    for (const auto& entry : one) {
      auto stage = field(entry, "stage").get<std::uint64_t>();
      auto values = field(entry, "values").get<std::vector<std::uint64_t>>();
      auto& slot = sched.by_stage[stage];
      slot.insert(slot.end(), values.begin(), values.end());
    }
    out.push_back(std::move(sched));
  }
  return out;
}

Json marker_trace_to_json(const MarkerTrace& t) {
  Json markers = Json::array();
  for (const auto& m : t.markers)
    markers.push_back(Json::array({m.strategy, m.stage, m.node}));
  Json zones = Json::array();
  for (const auto& z : t.zones)
    zones.push_back(Json::array({z.node, z.block, z.exponent}));
  return Json{{"schema_version", kSchemaVersion},
              {"stages", t.stages},
              {"depth", t.depth},
              {"we_bound_uses_2e", t.we_bound_uses_2e},
              {"markers", std::move(markers)},
              {"zones", std::move(zones)}};
}

MarkerTrace marker_trace_from_json(const Json& j) {
  MarkerTrace t;
  t.stages = field(j, "stages").get<unsigned>();
  t.depth = field(j, "depth").get<unsigned>();
  t.we_bound_uses_2e = j.value("we_bound_uses_2e", false);
  for (const auto& m : field(j, "markers")) {
    if (!m.is_array() || m.size() != 3)
      throw parse_error("marker: expected [strategy, stage, node]");
    t.markers.push_back(
        {m[0].get<unsigned>(), m[1].get<unsigned>(), m[2].get<std::string>()});
  }
  for (const auto& z : field(j, "zones")) {
    if (!z.is_array() || z.size() != 3)
      throw parse_error("zone: expected [node, block, exponent]");
    t.zones.push_back(
        {z[0].get<std::string>(), z[1].get<unsigned>(), z[2].get<unsigned>()});
  }
  return t;
}

Json wiggle_tree_to_json(const WiggleTree& w) {
  Json levels = Json::array();
  for (const auto& level : w.levels) levels.push_back(level);
  Json selections = Json::array();
  for (const auto& sel : w.selections) {
    Json one = Json::object();
    for (const auto& [node, m] : sel) one[node] = m;
    selections.push_back(std::move(one));
  }
  return Json{{"schema_version", kSchemaVersion},
              {"blocks", w.blocks},
              {"levels", std::move(levels)},
              {"selections", std::move(selections)}};
}

Json condition_to_json(const Condition& c) {
  return Json{{"sigma", Json{{"length", c.sigma.length},
                             {"oracle", oracle_to_json(c.sigma.oracle)}}},
              {"epsilon", ratio_str(c.epsilon)}};
}

Condition condition_from_json(const Json& j) {
  const Json& s = field(j, "sigma");
  return Condition{
      FinitePartialOracle::make(field(s, "length").get<std::uint64_t>(),
                                oracle_from_json(field(s, "oracle"))),
      ratio_parse(field(j, "epsilon").get<std::string>())};
}

Json tower_to_json(const Tower& t) {
  const char* kind = t.kind == TowerKind::halting90      ? "halting90"
                     : t.kind == TowerKind::agreement80  ? "agreement80"
                                                         : "disagreement60";
  Json out{{"schema_version", kSchemaVersion},
           {"kind", kind},
           {"boundaries", t.boundaries}};
  if (t.agreement_value) out["agreement_value"] = *t.agreement_value;
  return out;
}

std::string tower_stats_csv(const std::vector<FloorStats>& stats) {
  std::ostringstream out;
  out << "floor,k_i,k_i+1,mu_halt,mu_out0,mu_out1,mu_multi\n";
  for (const auto& s : stats)
    out << s.floor << ',' << s.lo << ',' << s.hi << ',' << ratio_str(s.mu_halt)
        << ',' << ratio_str(s.mu_out0) << ',' << ratio_str(s.mu_out1) << ','
        << ratio_str(s.mu_multi) << '\n';
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw resource_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw resource_error("cannot open " + path + " for writing");
  out << content;
}

Json parse_json_file(const std::string& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("JSON parse failure in ") + path + ": " +
                      e.what());
  }
}

}  // namespace glab
