#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "glab/prefix.hpp"

namespace glab {

// Delay budget meaning "search forever" at desk scale: any recorded delay
// qualifies.
inline constexpr std::uint64_t kNoBudget = UINT64_MAX;

// One <n, x, l> triple of a time-dependent partial oracle.
struct OracleEntry {
  std::uint64_t input;
  int value;  // 0 or 1
  std::uint64_t delay;

  bool operator==(const OracleEntry&) const = default;
};

// A finite partial oracle: at most one entry per input. Conflicting raw
// data is a parse error, never silently resolved.
class PartialOracle {
 public:
  struct Converged {
    int value;
    std::uint64_t delay;

    bool operator==(const Converged&) const = default;
  };

  PartialOracle() = default;

  // Throws parse_error on duplicate inputs or on value/target mismatch.
  static PartialOracle from_entries(const std::vector<OracleEntry>& entries,
                                    std::optional<Prefix> declared_target = {});

  // Oracle that converges immediately with the bits of p (the paper's abuse
  // of notation where a real stands for its total oracle).
  static PartialOracle total_for(const Prefix& p);

  const std::map<std::uint64_t, Converged>& entries() const { return entries_; }
  const std::optional<Prefix>& declared_target() const { return target_; }

  bool converges(std::uint64_t n) const { return entries_.count(n) != 0; }
  std::optional<Converged> at(std::uint64_t n) const;

  // converged(x) iff an entry (n, x, l) exists with l <= budget.
  std::optional<int> query(std::uint64_t n, std::uint64_t budget) const;

  std::size_t domain_size() const { return entries_.size(); }
  std::size_t domain_size_below(std::uint64_t n) const;
  std::uint64_t max_delay() const;

  bool operator==(const PartialOracle&) const = default;

 private:
  std::map<std::uint64_t, Converged> entries_;
  std::optional<Prefix> target_;
};

// Same partial function, delays ignored.
bool agrees(const PartialOracle& a, const PartialOracle& b);

// dom(small) subset of dom(big) with matching values.
bool extends(const PartialOracle& big, const PartialOracle& small);

// A partial oracle together with an explicit length bound; all inputs lie
// strictly below the length.
struct FinitePartialOracle {
  std::uint64_t length = 0;
  PartialOracle oracle;

  // Throws precondition_error if an input is >= length.
  static FinitePartialOracle make(std::uint64_t length, PartialOracle oracle);

  FinitePartialOracle restrict_to(std::uint64_t n) const;

  bool operator==(const FinitePartialOracle&) const = default;
};

// X_{k,l}: converges immediately exactly on [lo, hi) within the base
// prefix, with the base's bits. hi empty means unbounded above.
struct MaskedOracle {
  Prefix base;
  std::uint64_t lo = 0;
  std::optional<std::uint64_t> hi;

  PartialOracle induced() const;
};

// One axiom (D, n, x, s) of an enumeration operator: if the oracle's
// partial function extends D, output x on input n, available from stage s.
struct Axiom {
  std::map<std::uint64_t, int> fragment;
  std::uint64_t input;
  int output;
  std::uint64_t stage = 0;

  bool operator==(const Axiom&) const = default;
};

// A time-independent Turing functional in enumeration-operator normal
// form. Multivalued behavior is permitted and detected, never forbidden.
struct EnumOperator {
  std::vector<Axiom> axioms;

  std::uint64_t max_stage() const;
};

// {x : some axiom (D, n, x, s) has s <= stage and D contained in the
// partial function formed by o's entries with delay <= stage}.
std::set<int> eval_op(const EnumOperator& op, const PartialOracle& o,
                      std::uint64_t n, std::uint64_t stage);

bool is_multivalued(const EnumOperator& op, const PartialOracle& o,
                    std::uint64_t n, std::uint64_t stage);

std::set<int> eval_masked(const EnumOperator& op, const MaskedOracle& m,
                          std::uint64_t n, std::uint64_t stage);

}  // namespace glab
