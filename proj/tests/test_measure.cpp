#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "glab/errors.hpp"
#include "glab/measure.hpp"

using namespace glab;

namespace {

// Axioms firing on both values of bit m with the given output.
void add_constant(EnumOperator& op, std::uint64_t m, std::uint64_t n, int out,
                  std::uint64_t stage = 0) {
  op.axioms.push_back({{{m, 0}}, n, out, stage});
  op.axioms.push_back({{{m, 1}}, n, out, stage});
}

// Copy bit m: output equals the bit.
void add_copy(EnumOperator& op, std::uint64_t m, std::uint64_t n,
              std::uint64_t stage = 0) {
  op.axioms.push_back({{{m, 0}}, n, 0, stage});
  op.axioms.push_back({{{m, 1}}, n, 1, stage});
}

// Negate bit m: output is the complement.
void add_negate(EnumOperator& op, std::uint64_t m, std::uint64_t n,
                std::uint64_t stage = 0) {
  op.axioms.push_back({{{m, 0}}, n, 1, stage});
  op.axioms.push_back({{{m, 1}}, n, 0, stage});
}

// The parity operator over [lo, hi): copies even bits, negates odd bits.
EnumOperator parity_op(std::uint64_t lo, std::uint64_t hi, std::uint64_t n) {
  EnumOperator op;
  for (std::uint64_t m = lo; m < hi; ++m)
    if (m % 2 == 0)
      add_copy(op, m, n);
    else
      add_negate(op, m, n);
  return op;
}

EnumOperator random_op(std::mt19937_64& rng, unsigned axioms,
                       std::uint64_t lo, std::uint64_t hi) {
  std::uniform_int_distribution<std::uint64_t> bit(lo, hi - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<unsigned> fsize(0, 3);
  EnumOperator op;
  for (unsigned a = 0; a < axioms; ++a) {
    Axiom ax;
    unsigned size = fsize(rng);
    for (unsigned i = 0; i < size; ++i) ax.fragment[bit(rng)] = coin(rng);
    ax.input = 0;
    ax.output = coin(rng);
    ax.stage = 0;
    op.axioms.push_back(std::move(ax));
  }
  return op;
}

}  // namespace

TEST_CASE("halting_measure basics") {
  EnumOperator op{{Axiom{{{3, 1}}, 0, 7, 0}}};
  CHECK(halting_measure({op, 0, Window{0, 8}, 0}) == Ratio(1, 2));
  CHECK(halting_measure({op, 0, Window{4, std::nullopt}, 0}) == Ratio(0));

  EnumOperator always;
  for (std::uint64_t m = 2; m < 6; ++m) add_constant(always, m, 0, 1);
  CHECK(halting_measure({always, 0, Window{2, 6}, 0}) == Ratio(1));
}

TEST_CASE("halting_measure gates on stage") {
  EnumOperator op{{Axiom{{{3, 1}}, 0, 7, 5}}};
  CHECK(halting_measure({op, 0, Window{0, 8}, 4}) == Ratio(0));
  CHECK(halting_measure({op, 0, Window{0, 8}, 5}) == Ratio(1, 2));
}

TEST_CASE("output_measure basics") {
  EnumOperator const0;
  add_constant(const0, 2, 0, 0);
  CHECK(output_measure({const0, 0, Window{0, 8}, 0}, 0) == Ratio(1));
  CHECK(output_measure({const0, 0, Window{0, 8}, 0}, 1) == Ratio(0));

  EnumOperator copy;
  add_copy(copy, 3, 0);
  CHECK(output_measure({copy, 0, Window{0, 8}, 0}, 0) == Ratio(1, 2));
  CHECK(output_measure({copy, 0, Window{0, 8}, 0}, 1) == Ratio(1, 2));

  CHECK(output_measure({EnumOperator{}, 0, Window{0, 8}, 0}, 0) == Ratio(0));
}

TEST_CASE("multivalued_measure basics") {
  CHECK(multivalued_measure(parity_op(0, 4, 0), Window{0, 4}, 0, {0}) ==
        Ratio(7, 8));
  EnumOperator single{{Axiom{{{1, 0}}, 0, 0, 0}}};
  CHECK(multivalued_measure(single, Window{0, 4}, 0, {0}) == Ratio(0));

  EnumOperator xorc{{Axiom{{{0, 0}}, 0, 0, 0}, Axiom{{{0, 1}}, 0, 1, 0},
                     Axiom{{{1, 0}}, 0, 1, 0}, Axiom{{{1, 1}}, 0, 0, 0}}};
  CHECK(multivalued_measure(xorc, Window{0, 2}, 0, {0}) == Ratio(1, 2));
}

TEST_CASE("exhaustive and inclusion-exclusion agree") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 300; ++trial) {
    EnumOperator op = random_op(rng, 8, 0, 10);
    MeasureQuery q{op, 0, Window{1, 9}, 0};
    CHECK(halting_measure(q) == halting_measure_ie(q));
    CHECK(output_measure(q, 0) == output_measure_ie(q, 0));
    CHECK(output_measure(q, 1) == output_measure_ie(q, 1));
    CHECK(multivalued_measure(op, q.window, 0, {0}) ==
          multivalued_measure_ie(op, q.window, 0, {0}));
  }
}

TEST_CASE("complement rule over the relevant-bit space") {
  std::mt19937_64 rng(5551);
  for (int trial = 0; trial < 100; ++trial) {
    EnumOperator op = random_op(rng, 6, 0, 8);
    MeasureQuery q{op, 0, Window{0, std::nullopt}, 0};
    Ratio halts = halting_measure(q);
    CHECK(halts >= 0);
    CHECK(halts <= 1);
  }
}

TEST_CASE("independence product rule on disjoint windows") {
  std::mt19937_64 rng(90210);
  for (int trial = 0; trial < 100; ++trial) {
    EnumOperator e = random_op(rng, 4, 0, 6);
    EnumOperator f = random_op(rng, 4, 6, 12);
    Ratio mu_e = halting_measure({e, 0, Window{0, 6}, 0});
    Ratio mu_f = halting_measure({f, 0, Window{6, 12}, 0});
    // The conjunction event, one cylinder per consistent axiom pair.
    EnumOperator both;
    for (const auto& ae : e.axioms)
      for (const auto& af : f.axioms) {
        Axiom merged = ae;  // windows are disjoint: merging cannot clash
        merged.fragment.insert(af.fragment.begin(), af.fragment.end());
        both.axioms.push_back(std::move(merged));
      }
    CHECK(halting_measure({both, 0, Window{0, 12}, 0}) == mu_e * mu_f);
  }
}

TEST_CASE("resource caps are hard errors") {
  EnumOperator wide;
  for (std::uint64_t m = 0; m < 30; ++m) add_constant(wide, m, 0, 0);
  MeasureConfig tight;
  tight.bit_cap = 24;
  CHECK_THROWS_AS(
      halting_measure({wide, 0, Window{0, std::nullopt}, 0}, tight),
      resource_error);
  tight.ie_cylinder_cap = 8;
  CHECK_THROWS_AS(
      halting_measure_ie({wide, 0, Window{0, std::nullopt}, 0}, tight),
      resource_error);
}

TEST_CASE("mu monotonicity report") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 30; ++trial) {
    EnumOperator op = random_op(rng, 6, 0, 6);
    auto report = mu_monotonicity_check(op, 0, 4, 8, 2);
    INFO((report.violations.empty() ? "" : report.violations.front()));
    CHECK(report.ok());
  }
  auto empty = mu_monotonicity_check(EnumOperator{}, 0, 3, 6, 1);
  CHECK(empty.ok());
  CHECK(empty.stabilization_l == 1);
}

TEST_CASE("U-chain of a single-reason operator") {
  EnumOperator op{{Axiom{{{5, 1}}, 0, 1, 0}}};
  auto chain = build_U_chain(op, 0, 0, 3);
  REQUIRE(chain.size() == 4);
  CHECK(chain[0].mu == Ratio(1));
  CHECK(chain[1].mu == Ratio(1, 2));
  CHECK(chain[2].mu == Ratio(0));
  CHECK(chain[3].mu == Ratio(0));
}

TEST_CASE("U-chain of the empty operator") {
  auto chain = build_U_chain(EnumOperator{}, 0, 0, 2);
  CHECK(chain[0].mu == Ratio(1));
  CHECK(chain[1].mu == Ratio(0));
  CHECK(chain[2].mu == Ratio(0));
}

TEST_CASE("U-chain measures are non-increasing") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 100; ++trial) {
    EnumOperator op = random_op(rng, 6, 0, 10);
    auto chain = build_U_chain(op, 0, 0, 4);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      CHECK(chain[i + 1].mu <= chain[i].mu);
  }
}

TEST_CASE("greedy halting tower on an always-halting operator") {
  EnumOperator op;
  for (std::uint64_t m = 0; m < 8; ++m) add_constant(op, m, 0, 0);
  auto t = greedy_90_tower(op, 0, 0, 4, 16);
  REQUIRE(t.has_value());
  CHECK(t->boundaries == std::vector<std::uint64_t>({0, 1, 2, 3, 4}));
}

TEST_CASE("greedy halting tower fails on the empty operator") {
  CHECK_FALSE(greedy_90_tower(EnumOperator{}, 0, 0, 2, 32).has_value());
}

TEST_CASE("greedy halting tower respects sparse firing bits") {
  EnumOperator op;
  for (std::uint64_t m = 0; m <= 12; m += 4) add_constant(op, m, 0, 0);
  auto t = greedy_90_tower(op, 0, 0, 3, 32);
  REQUIRE(t.has_value());
  CHECK(t->boundaries == std::vector<std::uint64_t>({0, 1, 5, 9}));
}

TEST_CASE("classify_80") {
  std::uint64_t n = 0;
  SUBCASE("constant output agrees") {
    EnumOperator op;
    for (std::uint64_t m = 0; m < 4; ++m) add_constant(op, m, n, 0);
    auto t = greedy_90_tower(op, n, 0, 3, 8);
    REQUIRE(t.has_value());
    auto c = classify_80(*t, op, n);
    CHECK(c.kind == Classification::Kind::agreement);
    CHECK(c.value == 0);
  }
  SUBCASE("bit-copy floors never reach consensus") {
    EnumOperator op;
    for (std::uint64_t m = 0; m < 4; ++m) add_copy(op, m, n);
    auto t = greedy_90_tower(op, n, 0, 3, 8);
    REQUIRE(t.has_value());
    CHECK(classify_80(*t, op, n).kind == Classification::Kind::no_consensus);
  }
  SUBCASE("opposed floors give double consensus") {
    EnumOperator op;
    for (std::uint64_t m = 0; m < 2; ++m) add_constant(op, m, n, 0);
    for (std::uint64_t m = 2; m < 4; ++m) add_constant(op, m, n, 1);
    Tower t{TowerKind::halting90, {0, 2, 4}, std::nullopt};
    auto c = classify_80(t, op, n);
    CHECK(c.kind == Classification::Kind::double_consensus);
    CHECK(c.floor_index == 1);
  }
}

TEST_CASE("greedy disagreement tower on the parity operator") {
  auto op = parity_op(0, 16, 0);
  auto t = greedy_60_tower(op, 0, 3, 4, 16, 0, {0});
  REQUIRE(t.has_value());
  CHECK(t->boundaries == std::vector<std::uint64_t>({0, 4, 8, 12}));
}

TEST_CASE("greedy disagreement tower fails on single-valued operators") {
  EnumOperator op;
  for (std::uint64_t m = 0; m < 8; ++m) add_constant(op, m, 0, 0);
  CHECK_FALSE(greedy_60_tower(op, 0, 2, 2, 8, 0, {0}).has_value());
}

TEST_CASE("tiled contradiction operator needs two tiles per floor") {
  // Tile k contradicts itself when X(2k) = X(2k+1).
  EnumOperator op;
  for (std::uint64_t k = 0; k < 8; ++k) {
    op.axioms.push_back({{{2 * k, 0}}, 0, 0, 0});
    op.axioms.push_back({{{2 * k, 1}}, 0, 1, 0});
    op.axioms.push_back({{{2 * k + 1, 0}}, 0, 1, 0});
    op.axioms.push_back({{{2 * k + 1, 1}}, 0, 0, 0});
  }
  CHECK(multivalued_measure(op, Window{0, 2}, 0, {0}) == Ratio(1, 2));
  // Of the 16 assignments to bits 0..3 only the two alternating ones
  // (0101 and 1010) keep every tile on a single output.
  CHECK(multivalued_measure(op, Window{0, 4}, 0, {0}) == Ratio(7, 8));
  auto t = greedy_60_tower(op, 0, 2, 2, 16, 0, {0});
  REQUIRE(t.has_value());
  CHECK(t->boundaries == std::vector<std::uint64_t>({0, 4, 8}));
}

TEST_CASE("majority vote") {
  std::uint64_t n = 0;
  SUBCASE("constant output wins at its enumeration stage") {
    EnumOperator op;
    for (std::uint64_t m = 0; m < 3; ++m) add_constant(op, m, n, 0, 2);
    auto r = majority_vote(op, n, 0, 8);
    CHECK_FALSE(r.timed_out);
    CHECK(r.value == 0);
    CHECK(r.stage == 2);
  }
  SUBCASE("bit-copy stalls at one half") {
    EnumOperator op;
    add_copy(op, 2, n);
    CHECK(majority_vote(op, n, 0, 8).timed_out);
  }
  SUBCASE("a seven-eighths majority is found") {
    EnumOperator op{{Axiom{{{0, 0}}, n, 1, 0},
                     Axiom{{{0, 1}, {1, 0}}, n, 1, 0},
                     Axiom{{{0, 1}, {1, 1}, {2, 0}}, n, 1, 0}}};
    CHECK(output_measure({op, n, Window{0, std::nullopt}, 0}, 1) ==
          Ratio(7, 8));
    auto r = majority_vote(op, n, 0, 4);
    CHECK_FALSE(r.timed_out);
    CHECK(r.value == 1);
  }
}

TEST_CASE("vote soundness for an agreement tower") {
  EnumOperator op;
  for (std::uint64_t m = 0; m < 6; ++m) add_constant(op, m, 0, 1);
  auto t = greedy_90_tower(op, 0, 2, 3, 8);
  REQUIRE(t.has_value());
  auto c = classify_80(*t, op, 0);
  REQUIRE(c.kind == Classification::Kind::agreement);
  for (std::uint64_t l = 0; l <= 2; ++l) {
    auto r = majority_vote(op, 0, l, 4);
    REQUIRE_FALSE(r.timed_out);
    CHECK(r.value == c.value);
  }
}

TEST_CASE("tower_stats emits one row per floor") {
  EnumOperator op;
  for (std::uint64_t m = 0; m < 4; ++m) add_constant(op, m, 0, 0);
  Tower t{TowerKind::halting90, {0, 2, 4}, std::nullopt};
  auto stats = tower_stats(op, 0, t, 0);
  REQUIRE(stats.size() == 2);
  CHECK(stats[0].lo == 0);
  CHECK(stats[0].hi == 2);
  CHECK(stats[0].mu_halt == Ratio(1));
  CHECK(stats[1].mu_out0 == Ratio(1));
  CHECK(stats[0].mu_multi == Ratio(0));
}
