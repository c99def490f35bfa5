#include "glab/density.hpp"

#include "glab/errors.hpp"

namespace glab::density {

Ratio density_at(const Prefix& p, std::uint64_t n) {
  if (n == 0) throw precondition_error("density_at: n must be positive");
  if (n > p.size()) throw precondition_error("density_at: n exceeds prefix length");
  return Ratio(Int(p.ones_below(static_cast<std::size_t>(n))), Int(n));
}

bool has_gap(const Prefix& p, unsigned i, unsigned e) {
  if (e > i) throw precondition_error("has_gap: gap exponent e exceeds block index i");
  Block b{i};
  if (p.size() < b.hi())
    throw precondition_error("has_gap: prefix shorter than end of block P_" +
                             std::to_string(i));
  std::uint64_t ones = p.ones_in(b.lo(), b.hi());
  std::uint64_t threshold = b.width() - (std::uint64_t{1} << (i - e));
  return ones <= threshold;
}

std::vector<unsigned> gap_census(const Prefix& p, unsigned e, unsigned i_max) {
  if (e > i_max) throw precondition_error("gap_census: e exceeds i_max");
  if (p.size() < (std::uint64_t{1} << (i_max + 1)))
    throw precondition_error("gap_census: prefix too short for i_max");
  std::vector<unsigned> out;
  for (unsigned i = e; i <= i_max; ++i)
    if (has_gap(p, i, e)) out.push_back(i);
  return out;
}

GapBoundReport verify_gap_density_bounds(const Prefix& p, unsigned e,
                                         unsigned j) {
  // Largest block fully contained in the prefix.
  if (p.size() < 2) throw precondition_error("verify_gap_density_bounds: prefix too short");
  unsigned i_max = 0;
  while ((std::uint64_t{1} << (i_max + 2)) <= p.size()) ++i_max;
  if (i_max < e) throw precondition_error("verify_gap_density_bounds: prefix covers no block >= e");
  std::uint64_t tail_start = std::uint64_t{1} << (j + e + 1);
  if (p.size() < tail_start)
    throw precondition_error("verify_gap_density_bounds: prefix shorter than 2^{j+e+1}");

  auto census = gap_census(p, e, i_max);
  for (unsigned i : census)
    if (i > j)
      throw precondition_error(
          "verify_gap_density_bounds: gap at block " + std::to_string(i) +
          " beyond declared last-gap index " + std::to_string(j));

  GapBoundReport report;
  Ratio end_bound = Ratio(1) - pow2_neg(e + 1);
  for (unsigned i : census) {
    Ratio d = density_at(p, std::uint64_t{1} << (i + 1));
    if (d > end_bound) {
      report.block_density_ok = false;
      report.violations.push_back("density_at(2^" + std::to_string(i + 1) +
                                  ") = " + ratio_str(d) + " exceeds " +
                                  ratio_str(end_bound));
    }
  }
  // zeros-below-n <= 3n * 2^{-e}  <=>  zeros * 2^e <= 3n, exactly.
  for (std::uint64_t n = tail_start; n <= p.size(); ++n) {
    Int lhs = Int(p.zeros_below(static_cast<std::size_t>(n))) << e;
    if (lhs > Int(3) * Int(n)) {
      report.tail_zero_ok = false;
      report.violations.push_back("zeros below " + std::to_string(n) +
                                  " exceed 3n*2^-" + std::to_string(e));
    }
  }
  return report;
}

}  // namespace glab::density
