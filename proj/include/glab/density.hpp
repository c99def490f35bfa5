#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glab/prefix.hpp"
#include "glab/ratio.hpp"

namespace glab::density {

// The dyadic block P_i = [2^i, 2^{i+1}).
struct Block {
  unsigned index;
  std::uint64_t lo() const { return std::uint64_t{1} << index; }
  std::uint64_t hi() const { return std::uint64_t{1} << (index + 1); }
  std::uint64_t width() const { return lo(); }
};

// |{k < n : p.bit(k) = 1}| / n, exactly.
Ratio density_at(const Prefix& p, std::uint64_t n);

// True iff the count of ones of p inside P_i is <= 2^i - 2^{i-e}.
// Requires e <= i and p long enough to cover the whole block.
bool has_gap(const Prefix& p, unsigned i, unsigned e);

// All i in [e, i_max] with has_gap(p, i, e), ascending.
std::vector<unsigned> gap_census(const Prefix& p, unsigned e, unsigned i_max);

struct GapBoundReport {
  bool block_density_ok = true;  // every gapped block's end density <= 1 - 2^{-e-1}
  bool tail_zero_ok = true;      // zeros below n <= 3n * 2^{-e} past 2^{j+e+1}
  std::vector<std::string> violations;
  bool ok() const { return block_density_ok && tail_zero_ok; }
};

// Checks both halves of the gap lemma at prefix scale, with j the index of
// the last block allowed to carry a gap of size 2^{-e}.
GapBoundReport verify_gap_density_bounds(const Prefix& p, unsigned e,
                                         unsigned j);

}  // namespace glab::density
