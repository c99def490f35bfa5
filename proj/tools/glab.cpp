#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glab/coding.hpp"
#include "glab/construction.hpp"
#include "glab/density.hpp"
#include "glab/errors.hpp"
#include "glab/forcing.hpp"
#include "glab/json_io.hpp"
#include "glab/measure.hpp"
#include "glab/oracle.hpp"

namespace {

using glab::Json;

void emit(const std::string& out_path, const std::string& body) {
  if (out_path.empty()) {
    std::cout << body;
  } else {
    glab::write_text_file(out_path, body);
  }
}

void emit_json(const std::string& out_path, const Json& j) {
  emit(out_path, j.dump(2) + "\n");
}

glab::MeasureConfig measure_config(unsigned bit_cap,
                                   const std::string& halt,
                                   const std::string& agree,
                                   const std::string& disagree) {
  glab::MeasureConfig cfg;
  if (const char* env = std::getenv("GLAB_BIT_CAP"))
    cfg.bit_cap = static_cast<unsigned>(std::stoul(env));
  if (bit_cap != 0) cfg.bit_cap = bit_cap;
  if (!halt.empty()) cfg.halt_threshold = glab::ratio_parse(halt);
  if (!agree.empty()) cfg.agree_threshold = glab::ratio_parse(agree);
  if (!disagree.empty()) cfg.disagree_threshold = glab::ratio_parse(disagree);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"genericity-lab: density, coding, construction, measure and "
               "forcing experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may appear after the subcommand

  std::string input, oracle_path, op_path, out_path, format = "json";
  std::string threshold_halt, threshold_agree, threshold_disagree;
  std::string map_kind = "r", measure_kind = "halt";
  std::string p_path, q_path, schedules_path;
  unsigned stages = 5, depth = 8, blocks = 3, bit_cap = 0;
  unsigned exponent = 1, max_block = 8, max_len = 4, floors = 3;
  unsigned strategy_count = 1, witness_cap = 8;
  std::uint64_t n = 0, out_len = 16, lo = 0, hi = 0, stage = 0;
  std::uint64_t k = 0, l_cap = 64, step = 1, stage_cap = 16, vote_l = 0;
  std::string tower_kind = "90";

  app.add_option("--out", out_path, "Output file (default stdout)");
  app.add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--bit-cap", bit_cap, "Relevant-bit cap override");
  app.add_option("--threshold-halt", threshold_halt, "Halting threshold p/q");
  app.add_option("--threshold-agree", threshold_agree,
                 "Agreement threshold p/q");
  app.add_option("--threshold-disagree", threshold_disagree,
                 "Disagreement threshold p/q");

  auto* density = app.add_subcommand("density", "Gap census and bounds");
  density->add_option("--input", input, "Prefix JSON file")->required();
  density->add_option("-e,--exponent", exponent, "Gap exponent e");
  density->add_option("--max-block", max_block, "Last block allowed a gap");

  auto* encode = app.add_subcommand("encode", "Apply a coding map");
  encode->add_option("--input", input, "Prefix JSON file")->required();
  encode->add_option("--map", map_kind, "r or rtilde")
      ->check(CLI::IsMember({"r", "rtilde"}));
  encode->add_option("--out-len", out_len, "Image length");

  auto* decode = app.add_subcommand("decode", "Witness-scan a coded oracle");
  decode->add_option("--oracle", oracle_path, "Oracle JSON file")->required();
  decode->add_option("--map", map_kind, "r or rtilde")
      ->check(CLI::IsMember({"r", "rtilde"}));
  decode->add_option("-n", n, "Source bit");
  decode->add_option("--witness-cap", witness_cap, "Witnesses scanned");

  auto* marker = app.add_subcommand("marker-run", "Marker construction trace");
  marker->add_option("--schedules", schedules_path, "Schedules JSON file");
  marker->add_option("--count", strategy_count,
                     "Strategy count when no schedule file is given");
  marker->add_option("--stages", stages, "Stages simulated");
  marker->add_option("--depth", depth, "Depth cap");

  auto* wiggle = app.add_subcommand("wiggle-tree", "Build the wiggle tree");
  wiggle->add_option("--blocks", blocks, "Block count");

  auto* bad = app.add_subcommand("bad-strings", "Non-prefix string codes");
  bad->add_option("--input", input, "Prefix JSON file")->required();
  bad->add_option("--max-len", max_len, "Longest string coded");

  auto* measure = app.add_subcommand("measure", "Window cylinder measures");
  measure->add_option("--operator", op_path, "Operator JSON file")->required();
  measure->add_option("-n", n, "Input");
  measure->add_option("--lo", lo, "Window start");
  measure->add_option("--hi", hi, "Window end (0 = unbounded)");
  measure->add_option("--stage", stage, "Stage bound");
  measure->add_option("--kind", measure_kind, "halt, out0, out1 or multi")
      ->check(CLI::IsMember({"halt", "out0", "out1", "multi"}));

  auto* tower = app.add_subcommand("tower", "Greedy tower construction");
  tower->add_option("--operator", op_path, "Operator JSON file")->required();
  tower->add_option("-n", n, "Input");
  tower->add_option("-k", k, "First boundary");
  tower->add_option("--floors", floors, "Floor count");
  tower->add_option("--l-cap", l_cap, "Boundary search cap");
  tower->add_option("--kind", tower_kind, "90 or 60")
      ->check(CLI::IsMember({"90", "60"}));
  tower->add_option("--step", step, "Boundary step (60 only)");
  tower->add_option("--stage", stage, "Stage bound (60 only)");

  auto* vote = app.add_subcommand("vote", "Majority-vote extraction");
  vote->add_option("--operator", op_path, "Operator JSON file")->required();
  vote->add_option("-n", n, "Input");
  vote->add_option("-l", vote_l, "Mask start");
  vote->add_option("--stage-cap", stage_cap, "Stage cap");

  auto* forcing = app.add_subcommand("forcing", "Condition extension check");
  forcing->add_option("-p", p_path, "Base condition JSON file")->required();
  forcing->add_option("-q", q_path, "Candidate extension JSON file")
      ->required();

  try {
    app.parse(argc, argv);

    if (*density) {
      glab::Prefix p = glab::prefix_from_json(glab::parse_json_file(input));
      auto census = glab::density::gap_census(p, exponent, max_block);
      auto report =
          glab::density::verify_gap_density_bounds(p, exponent, max_block);
      emit_json(out_path, Json{{"schema_version", glab::kSchemaVersion},
                               {"census", census},
                               {"block_density_ok", report.block_density_ok},
                               {"tail_zero_ok", report.tail_zero_ok},
                               {"violations", report.violations}});
    } else if (*encode) {
      glab::Prefix p = glab::prefix_from_json(glab::parse_json_file(input));
      glab::Prefix image = map_kind == "r" ? glab::encode_R(p, out_len)
                                           : glab::encode_Rtilde(p, out_len);
      emit_json(out_path, glab::prefix_to_json(image));
    } else if (*decode) {
      glab::PartialOracle o =
          glab::oracle_from_json(glab::parse_json_file(oracle_path));
      glab::Vote v = map_kind == "r"
                         ? glab::decode_R_vote(o, n, witness_cap)
                         : glab::generic_to_cofinite(o, n);
      emit_json(out_path, Json{{"schema_version", glab::kSchemaVersion},
                               {"n", n},
                               {"value", glab::vote_name(v)}});
    } else if (*marker) {
      std::vector<glab::CESchedule> schedules(strategy_count);
      if (!schedules_path.empty())
        schedules =
            glab::schedules_from_json(glab::parse_json_file(schedules_path));
      auto trace = glab::run_marker_construction(schedules, stages, depth);
      emit_json(out_path, glab::marker_trace_to_json(trace));
    } else if (*wiggle) {
      emit_json(out_path,
                glab::wiggle_tree_to_json(glab::build_wiggle_tree(blocks)));
    } else if (*bad) {
      glab::Prefix a = glab::prefix_from_json(glab::parse_json_file(input));
      emit_json(out_path, glab::prefix_to_json(glab::bad_strings(a, max_len)));
    } else if (*measure) {
      auto cfg = measure_config(bit_cap, threshold_halt, threshold_agree,
                                threshold_disagree);
      glab::EnumOperator op =
          glab::operator_from_json(glab::parse_json_file(op_path));
      glab::Window w{lo, hi == 0 ? std::nullopt
                                 : std::optional<std::uint64_t>(hi)};
      glab::Ratio mu, mu_ie;
      if (measure_kind == "multi") {
        mu = glab::multivalued_measure(op, w, stage, {n}, cfg);
        mu_ie = glab::multivalued_measure_ie(op, w, stage, {n}, cfg);
      } else {
        glab::MeasureQuery q{op, n, w, stage};
        if (measure_kind == "halt") {
          mu = glab::halting_measure(q, cfg);
          mu_ie = glab::halting_measure_ie(q, cfg);
        } else {
          int v = measure_kind == "out1" ? 1 : 0;
          mu = glab::output_measure(q, v, cfg);
          mu_ie = glab::output_measure_ie(q, v, cfg);
        }
      }
      emit_json(out_path, Json{{"schema_version", glab::kSchemaVersion},
                               {"kind", measure_kind},
                               {"mu", glab::ratio_str(mu)},
                               {"mu_ie", glab::ratio_str(mu_ie)}});
    } else if (*tower) {
      auto cfg = measure_config(bit_cap, threshold_halt, threshold_agree,
                                threshold_disagree);
      glab::EnumOperator op =
          glab::operator_from_json(glab::parse_json_file(op_path));
      std::optional<glab::Tower> t =
          tower_kind == "90"
              ? glab::greedy_90_tower(op, n, k, floors, l_cap, cfg)
              : glab::greedy_60_tower(op, k, floors, step, l_cap, stage, {n},
                                      cfg);
      if (!t) {
        emit_json(out_path, Json{{"schema_version", glab::kSchemaVersion},
                                 {"result", "failure"}});
      } else if (format == "csv") {
        emit(out_path, glab::tower_stats_csv(glab::tower_stats(
                           op, n, *t, op.max_stage(), cfg)));
      } else {
        Json j = glab::tower_to_json(*t);
        if (tower_kind == "90") {
          auto c = glab::classify_80(*t, op, n, cfg);
          j["classification"] =
              c.kind == glab::Classification::Kind::agreement
                  ? Json{{"kind", "agreement"}, {"value", c.value}}
              : c.kind == glab::Classification::Kind::no_consensus
                  ? Json{{"kind", "no_consensus"}}
                  : Json{{"kind", "double_consensus"},
                         {"floor", c.floor_index}};
        }
        emit_json(out_path, j);
      }
    } else if (*vote) {
      auto cfg = measure_config(bit_cap, threshold_halt, threshold_agree,
                                threshold_disagree);
      glab::EnumOperator op =
          glab::operator_from_json(glab::parse_json_file(op_path));
      auto r = glab::majority_vote(op, n, vote_l, stage_cap, cfg);
      Json j{{"schema_version", glab::kSchemaVersion}};
      if (r.timed_out) {
        j["result"] = "timeout";
      } else {
        j["result"] = "value";
        j["value"] = r.value;
        j["stage"] = r.stage;
      }
      emit_json(out_path, j);
    } else if (*forcing) {
      glab::Condition p =
          glab::condition_from_json(glab::parse_json_file(p_path));
      glab::Condition q =
          glab::condition_from_json(glab::parse_json_file(q_path));
      emit_json(out_path, Json{{"schema_version", glab::kSchemaVersion},
                               {"extends", glab::extends_condition(q, p)}});
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const glab::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const glab::precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const glab::resource_error& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return 4;
  }
}
