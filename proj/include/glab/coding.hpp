#pragma once

#include <cstdint>

#include "glab/oracle.hpp"
#include "glab/prefix.hpp"

namespace glab {

// Outcome of a witness-scanning decode against a partial oracle. "conflict"
// is a legitimate value: it models multivalued behavior on oracles that are
// not genuine images.
enum class Vote { zero, one, undetermined, conflict };

const char* vote_name(Vote v);

// Image under X |-> {(2k+1)2^n : k in omega, n in X}. Position 0 carries no
// code and is fixed to 0.
Prefix encode_R(const Prefix& x, std::uint64_t out_len);

// Image under X |-> {m : exists n in X with 2^n <= m < 2^{n+1}}. Position 0
// is fixed to 0.
Prefix encode_Rtilde(const Prefix& x, std::uint64_t out_len);

// Scan positions (2k+1)2^n for k < witness_cap; unique converged value wins,
// disagreement is a conflict.
Vote decode_R_vote(const PartialOracle& y, std::uint64_t n,
                   std::uint64_t witness_cap);

// Scan the block [2^n, 2^{n+1}) of a block-coded image for converged entries.
Vote generic_to_cofinite(const PartialOracle& y, std::uint64_t n);

// From a partial oracle for X, produce a partial oracle for its block-coded
// image: each converged source bit fills its whole block (same value, same
// delay) up to out_len.
PartialOracle cofinite_to_generic(const PartialOracle& x, std::uint64_t out_len);

// X_k = {n : (2n+1)2^k in X}.
Prefix row(const Prefix& x, std::uint64_t k, std::uint64_t out_len);

// A_{=i} = {n : kn+i in A}.
Prefix row_mod(const Prefix& x, std::uint64_t k, std::uint64_t i,
               std::uint64_t out_len);

// {n : x(n) = b(n)}; lengths must match.
Prefix agreement_set(const Prefix& x, const Prefix& b);

// A = {2^n : n in B} union (C minus the powers of two).
Prefix asymmetric_join(const Prefix& b, const Prefix& c, std::uint64_t out_len);

}  // namespace glab
