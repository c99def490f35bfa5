#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "glab/errors.hpp"
#include "glab/oracle.hpp"

using namespace glab;

namespace {

PartialOracle oracle(std::vector<OracleEntry> entries) {
  return PartialOracle::from_entries(entries);
}

}  // namespace

TEST_CASE("query respects the delay budget") {
  auto o = oracle({{3, 1, 2}});
  CHECK(o.query(3, 2) == 1);
  CHECK_FALSE(o.query(3, 1).has_value());
  CHECK_FALSE(o.query(4, kNoBudget).has_value());
  CHECK_FALSE(oracle({}).query(0, kNoBudget).has_value());
}

TEST_CASE("duplicate inputs are rejected at parse time") {
  CHECK_THROWS_AS(oracle({{1, 1, 0}, {1, 0, 5}}), parse_error);
  CHECK_THROWS_AS(oracle({{1, 1, 0}, {1, 1, 5}}), parse_error);
}

TEST_CASE("declared target pins entry values") {
  Prefix target = Prefix::from_bits("101");
  CHECK_NOTHROW(PartialOracle::from_entries({{0, 1, 3}, {2, 1, 7}}, target));
  CHECK_THROWS_AS(PartialOracle::from_entries({{1, 1, 0}}, target),
                  parse_error);
}

TEST_CASE("agrees ignores delays") {
  CHECK(agrees(oracle({{1, 1, 5}}), oracle({{1, 1, 9}})));
  CHECK_FALSE(agrees(oracle({{1, 1, 5}}), oracle({{1, 0, 5}})));
  CHECK(agrees(oracle({}), oracle({})));
  CHECK_FALSE(agrees(oracle({{1, 1, 5}}), oracle({{1, 1, 5}, {2, 0, 0}})));
}

TEST_CASE("extends is domain containment with agreement") {
  CHECK(extends(oracle({{1, 1, 5}, {2, 0, 1}}), oracle({{1, 1, 9}})));
  CHECK_FALSE(extends(oracle({}), oracle({{1, 1, 5}})));
  CHECK(extends(oracle({{1, 1, 5}}), oracle({})));
  CHECK(extends(oracle({}), oracle({})));
  CHECK_FALSE(extends(oracle({{1, 0, 5}}), oracle({{1, 1, 9}})));
}

TEST_CASE("total_for builds an immediate oracle with a target") {
  Prefix p = Prefix::from_bits("0110");
  auto o = PartialOracle::total_for(p);
  CHECK(o.domain_size() == 4);
  CHECK(o.query(1, 0) == 1);
  CHECK(o.query(3, 0) == 0);
  CHECK(o.max_delay() == 0);
  REQUIRE(o.declared_target().has_value());
  CHECK(*o.declared_target() == p);
}

TEST_CASE("finite partial oracles bound their inputs") {
  CHECK_THROWS_AS(FinitePartialOracle::make(3, oracle({{3, 1, 0}})),
                  precondition_error);
  auto f = FinitePartialOracle::make(8, oracle({{0, 1, 0}, {5, 0, 2}}));
  auto r = f.restrict_to(4);
  CHECK(r.length == 4);
  CHECK(r.oracle.domain_size() == 1);
  CHECK(r.oracle.query(0, 0) == 1);
}

TEST_CASE("masked oracles converge exactly on the window") {
  Prefix base = Prefix::from_bits("10110100");
  MaskedOracle m{base, 2, 6};
  auto o = m.induced();
  CHECK(o.domain_size() == 4);
  CHECK_FALSE(o.converges(1));
  CHECK(o.query(2, 0) == 1);
  CHECK(o.query(5, 0) == 1);
  CHECK_FALSE(o.converges(6));

  MaskedOracle unbounded{base, 5, std::nullopt};
  CHECK(unbounded.induced().domain_size() == 3);
}

TEST_CASE("eval_op gates on stage, fragment and delay") {
  EnumOperator op{{Axiom{{{3, 1}}, 5, 0, 0}}};
  auto o = oracle({{3, 1, 2}});
  CHECK(eval_op(op, o, 5, 2) == std::set<int>{0});
  CHECK(eval_op(op, o, 5, 1).empty());   // oracle delay not elapsed
  CHECK(eval_op(op, o, 4, 2).empty());   // wrong input
  EnumOperator late{{Axiom{{{3, 1}}, 5, 0, 7}}};
  CHECK(eval_op(late, o, 5, 2).empty()); // axiom not yet enumerated
  CHECK(eval_op(late, o, 5, 7) == std::set<int>{0});
}

TEST_CASE("empty fragments always apply") {
  EnumOperator op{{Axiom{{}, 0, 0, 0}, Axiom{{}, 0, 1, 0}}};
  CHECK(eval_op(op, oracle({}), 0, 0) == std::set<int>({0, 1}));
  CHECK(is_multivalued(op, oracle({}), 0, 0));
  CHECK_FALSE(is_multivalued(EnumOperator{{Axiom{{}, 0, 0, 0}}}, oracle({}),
                             0, 0));
}

TEST_CASE("eval_masked windows the oracle") {
  EnumOperator op{{Axiom{{{3, 1}}, 7, 0, 0}}};
  Prefix base = Prefix::from_positions({3}, 8);
  CHECK(eval_masked(op, MaskedOracle{base, 4, std::nullopt}, 7, 0).empty());
  CHECK(eval_masked(op, MaskedOracle{base, 0, std::nullopt}, 7, 0) ==
        std::set<int>{0});
  CHECK(eval_masked(op, MaskedOracle{base, 3, 4}, 7, 0) == std::set<int>{0});
}

namespace {

EnumOperator random_operator(std::mt19937_64& rng, unsigned max_axioms,
                             unsigned bit_space) {
  std::uniform_int_distribution<unsigned> n_axioms(0, max_axioms);
  std::uniform_int_distribution<std::uint64_t> bits(0, bit_space - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<std::uint64_t> stages(0, 4);
  EnumOperator op;
  unsigned count = n_axioms(rng);
  for (unsigned a = 0; a < count; ++a) {
    Axiom ax;
    unsigned fsize = static_cast<unsigned>(bits(rng)) % 4;
    for (unsigned i = 0; i < fsize; ++i) ax.fragment[bits(rng)] = coin(rng);
    ax.input = bits(rng) % 3;
    ax.output = coin(rng);
    ax.stage = stages(rng);
    op.axioms.push_back(std::move(ax));
  }
  return op;
}

PartialOracle random_oracle(std::mt19937_64& rng, unsigned bit_space) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<std::uint64_t> delays(0, 4);
  std::vector<OracleEntry> entries;
  for (std::uint64_t i = 0; i < bit_space; ++i)
    if (coin(rng)) entries.push_back({i, coin(rng), delays(rng)});
  return PartialOracle::from_entries(entries);
}

}  // namespace

TEST_CASE("monotonicity in stage and oracle, property-style") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 500; ++trial) {
    EnumOperator op = random_operator(rng, 8, 10);
    PartialOracle small = random_oracle(rng, 10);
    // A strict extension: add entries on fresh inputs.
    std::vector<OracleEntry> grown;
    for (const auto& [n, c] : small.entries())
      grown.push_back({n, c.value, c.delay});
    for (std::uint64_t i = 0; i < 10; ++i)
      if (!small.converges(i)) grown.push_back({i, static_cast<int>(i % 2), 0});
    PartialOracle big = PartialOracle::from_entries(grown);
    REQUIRE(extends(big, small));

    for (std::uint64_t n = 0; n < 3; ++n) {
      auto early = eval_op(op, small, n, 2);
      auto late = eval_op(op, small, n, 5);
      for (int v : early) CHECK(late.count(v) == 1);
      auto from_small = eval_op(op, small, n, 5);
      auto from_big = eval_op(op, big, n, 5);
      for (int v : from_small) CHECK(from_big.count(v) == 1);
    }
  }
}

TEST_CASE("time-independence: agreeing oracles evaluate equal in the limit") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 500; ++trial) {
    EnumOperator op = random_operator(rng, 8, 10);
    PartialOracle x = random_oracle(rng, 10);
    std::uniform_int_distribution<std::uint64_t> delays(0, 9);
    std::vector<OracleEntry> re;
    for (const auto& [n, c] : x.entries())
      re.push_back({n, c.value, delays(rng)});
    PartialOracle y = PartialOracle::from_entries(re);
    REQUIRE(agrees(x, y));
    std::uint64_t horizon = std::max(x.max_delay(), y.max_delay());
    horizon = std::max(horizon, op.max_stage());
    for (std::uint64_t n = 0; n < 3; ++n)
      CHECK(eval_op(op, x, n, horizon) == eval_op(op, y, n, horizon));
  }
}
