#include "glab/coding.hpp"

#include <bit>

#include "glab/errors.hpp"

namespace glab {

namespace {

// Unique n, k with m = (2k+1)2^n, for m >= 1.
std::uint64_t odd_part_exponent(std::uint64_t m) {
  return static_cast<std::uint64_t>(std::countr_zero(m));
}

// Unique n with 2^n <= m < 2^{n+1}, for m >= 1.
std::uint64_t block_index(std::uint64_t m) {
  return 63u - static_cast<std::uint64_t>(std::countl_zero(m));
}

Vote vote_of(std::optional<int> acc) {
  if (!acc) return Vote::undetermined;
  return *acc == 0 ? Vote::zero : Vote::one;
}

}  // namespace

const char* vote_name(Vote v) {
  switch (v) {
    case Vote::zero: return "0";
    case Vote::one: return "1";
    case Vote::undetermined: return "undetermined";
    case Vote::conflict: return "conflict";
  }
  return "?";
}

Prefix encode_R(const Prefix& x, std::uint64_t out_len) {
  Prefix out(static_cast<std::size_t>(out_len));
  for (std::uint64_t m = 1; m < out_len; ++m) {
    std::uint64_t n = odd_part_exponent(m);
    if (n >= x.size())
      throw precondition_error("encode_R: position " + std::to_string(m) +
                               " needs source bit " + std::to_string(n));
    out.set(static_cast<std::size_t>(m), x.bit(static_cast<std::size_t>(n)));
  }
  return out;
}

Prefix encode_Rtilde(const Prefix& x, std::uint64_t out_len) {
  Prefix out(static_cast<std::size_t>(out_len));
  for (std::uint64_t m = 1; m < out_len; ++m) {
    std::uint64_t n = block_index(m);
    if (n >= x.size())
      throw precondition_error("encode_Rtilde: position " + std::to_string(m) +
                               " needs source bit " + std::to_string(n));
    out.set(static_cast<std::size_t>(m), x.bit(static_cast<std::size_t>(n)));
  }
  return out;
}

Vote decode_R_vote(const PartialOracle& y, std::uint64_t n,
                   std::uint64_t witness_cap) {
  std::optional<int> acc;
  for (std::uint64_t k = 0; k < witness_cap; ++k) {
    std::uint64_t m = (2 * k + 1) << n;
    auto c = y.at(m);
    if (!c) continue;
    if (acc && *acc != c->value) return Vote::conflict;
    acc = c->value;
  }
  return vote_of(acc);
}

Vote generic_to_cofinite(const PartialOracle& y, std::uint64_t n) {
  std::optional<int> acc;
  for (std::uint64_t m = std::uint64_t{1} << n; m < (std::uint64_t{2} << n);
       ++m) {
    auto c = y.at(m);
    if (!c) continue;
    if (acc && *acc != c->value) return Vote::conflict;
    acc = c->value;
  }
  return vote_of(acc);
}

PartialOracle cofinite_to_generic(const PartialOracle& x,
                                  std::uint64_t out_len) {
  std::vector<OracleEntry> entries;
  for (const auto& [n, c] : x.entries()) {
    if (n >= 63) break;  // blocks past out_len contribute nothing at desk scale
    for (std::uint64_t m = std::uint64_t{1} << n;
         m < (std::uint64_t{2} << n) && m < out_len; ++m)
      entries.push_back({m, c.value, c.delay});
  }
  return PartialOracle::from_entries(entries);
}

Prefix row(const Prefix& x, std::uint64_t k, std::uint64_t out_len) {
  Prefix out(static_cast<std::size_t>(out_len));
  for (std::uint64_t n = 0; n < out_len; ++n) {
    std::uint64_t m = (2 * n + 1) << k;
    if (m >= x.size())
      throw precondition_error("row: source bit " + std::to_string(m) +
                               " unavailable");
    out.set(static_cast<std::size_t>(n), x.bit(static_cast<std::size_t>(m)));
  }
  return out;
}

Prefix row_mod(const Prefix& x, std::uint64_t k, std::uint64_t i,
               std::uint64_t out_len) {
  if (k == 0) throw precondition_error("row_mod: modulus must be positive");
  Prefix out(static_cast<std::size_t>(out_len));
  for (std::uint64_t n = 0; n < out_len; ++n) {
    std::uint64_t m = k * n + i;
    if (m >= x.size())
      throw precondition_error("row_mod: source bit " + std::to_string(m) +
                               " unavailable");
    out.set(static_cast<std::size_t>(n), x.bit(static_cast<std::size_t>(m)));
  }
  return out;
}

Prefix agreement_set(const Prefix& x, const Prefix& b) {
  if (x.size() != b.size())
    throw precondition_error("agreement_set: length mismatch");
  Prefix out(x.size());
  for (std::size_t n = 0; n < x.size(); ++n)
    out.set(n, x.bit(n) == b.bit(n) ? 1 : 0);
  return out;
}

Prefix asymmetric_join(const Prefix& b, const Prefix& c, std::uint64_t out_len) {
  Prefix out(static_cast<std::size_t>(out_len));
  for (std::uint64_t m = 0; m < out_len; ++m) {
    bool is_pow2 = m != 0 && (m & (m - 1)) == 0;
    if (is_pow2) {
      std::uint64_t n = block_index(m);
      if (n >= b.size())
        throw precondition_error("asymmetric_join: missing B bit " +
                                 std::to_string(n));
      out.set(static_cast<std::size_t>(m), b.bit(static_cast<std::size_t>(n)));
    } else {
      if (m >= c.size())
        throw precondition_error("asymmetric_join: missing C bit " +
                                 std::to_string(m));
      out.set(static_cast<std::size_t>(m), c.bit(static_cast<std::size_t>(m)));
    }
  }
  return out;
}

}  // namespace glab
