#include "glab/ratio.hpp"

#include "glab/errors.hpp"

namespace glab {

Int pow2_int(unsigned e) { return Int(1) << e; }

Ratio pow2_neg(unsigned e) { return Ratio(Int(1), pow2_int(e)); }

std::string ratio_str(const Ratio& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Ratio ratio_parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Ratio(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den <= 0) throw parse_error("ratio denominator must be positive: " + s);
    return Ratio(num, den);
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error("malformed rational: " + s);
  }
}

}  // namespace glab
