#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "glab/oracle.hpp"
#include "glab/prefix.hpp"
#include "glab/ratio.hpp"

namespace glab {

// A forcing condition: a finite partial oracle whose domain density stays
// above 1 - epsilon.
struct Condition {
  FinitePartialOracle sigma;
  Ratio epsilon;

  bool operator==(const Condition&) const = default;
};

// Density invariant |dom(sigma)| / |sigma| > 1 - epsilon (vacuous at length
// 0), with epsilon in (0, 1].
bool is_condition(const Condition& c);

// q extends p: q.sigma is a triple-for-triple end-extension of p.sigma,
// q.epsilon <= p.epsilon, and the domain density stays above 1 - p.epsilon
// at every intermediate length. Throws precondition_error unless both are
// conditions.
bool extends_condition(const Condition& q, const Condition& p);

struct FResult {
  PartialOracle oracle;
  std::uint64_t m0 = 0;
};

// The oracle transformer: below |sigma| copy sigma; on [|sigma|, m0) and on
// every later position off the residue class i mod k, halt immediately with
// the bits of a; on residue positions at or past m0, mirror x at source
// position (m - i) / k with x's own delay. m0 is the least start for which
// the always-converging part keeps density above 1 - epsilon at every
// length up to horizon_factor * m0.
FResult build_F(const PartialOracle& x, const FinitePartialOracle& sigma,
                const Ratio& epsilon, std::uint64_t k, std::uint64_t i,
                const Prefix& a, std::uint64_t out_len,
                std::uint64_t m0_cap = 4096, unsigned horizon_factor = 4);

// Adds entries at fresh positions with delay l_floor + 1 (strictly above
// every delay queried so far). Throws precondition_error when a position is
// occupied or out of range.
FinitePartialOracle halt_late(
    const FinitePartialOracle& tau,
    const std::vector<std::pair<std::uint64_t, int>>& additions,
    std::uint64_t l_floor);

struct PsiResult {
  int value = 0;
  PartialOracle witness;
};

// Searches the finite partial oracles Y with Y restricted below |sigma|
// equal to sigma, dom(Y) contained in dom(f), and Y agreeing with f, for
// one making the operator halt on n by stage_cap. Candidate domains are
// enumerated smallest-first (size, then lexicographic); the smallest output
// of the first hit is returned.
std::optional<PsiResult> psi_search(const EnumOperator& op,
                                    const FinitePartialOracle& sigma,
                                    const PartialOracle& f, std::uint64_t n,
                                    std::uint64_t length_cap,
                                    std::uint64_t stage_cap,
                                    unsigned subset_bit_cap = 16);

}  // namespace glab
