#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace glab {

using Int = boost::multiprecision::cpp_int;

// Exact rational in lowest terms with positive denominator.
// All densities, measures and thresholds in this project are Ratios;
// floating point is never used in the core.
using Ratio = boost::multiprecision::cpp_rational;

Int pow2_int(unsigned e);

// 2^{-e}
Ratio pow2_neg(unsigned e);

// Renders as "p/q" (or "p" when q == 1 is still rendered "p/1" for
// stability of trace formats).
std::string ratio_str(const Ratio& r);

// Parses "p/q" or a bare integer "p". Throws parse_error.
Ratio ratio_parse(const std::string& s);

}  // namespace glab
