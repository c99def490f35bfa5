#include "glab/forcing.hpp"

#include <algorithm>

#include "glab/errors.hpp"

namespace glab {

bool is_condition(const Condition& c) {
  if (c.epsilon <= 0 || c.epsilon > 1) return false;
  if (c.sigma.length == 0) return true;
  return Ratio(Int(c.sigma.oracle.domain_size()), Int(c.sigma.length)) >
         1 - c.epsilon;
}

bool extends_condition(const Condition& q, const Condition& p) {
  if (!is_condition(p))
    throw precondition_error("extends_condition: base is not a condition");
  if (!is_condition(q)) return false;
  if (q.sigma.length < p.sigma.length) return false;
  if (q.epsilon > p.epsilon) return false;
  if (!(q.sigma.restrict_to(p.sigma.length).oracle == p.sigma.oracle))
    return false;
  for (std::uint64_t n = p.sigma.length; n <= q.sigma.length; ++n) {
    if (n == 0) continue;  // vacuous at length 0
    if (Ratio(Int(q.sigma.oracle.domain_size_below(n)), Int(n)) <=
        1 - p.epsilon)
      return false;
  }
  return true;
}

FResult build_F(const PartialOracle& x, const FinitePartialOracle& sigma,
                const Ratio& epsilon, std::uint64_t k, std::uint64_t i,
                const Prefix& a, std::uint64_t out_len, std::uint64_t m0_cap,
                unsigned horizon_factor) {
  if (k == 0 || Ratio(1, Int(k)) >= epsilon)
    throw precondition_error("build_F: 1/k must fall below epsilon");
  if (i >= k) throw precondition_error("build_F: residue out of range");

  // Least m0 for which the guaranteed domain (dom(sigma), then everything
  // below m0, then everything off the residue class) keeps density above
  // 1 - epsilon at every length from |sigma| to the horizon.
  std::optional<std::uint64_t> m0;
  for (std::uint64_t cand = std::max<std::uint64_t>(sigma.length, 1);
       cand <= m0_cap; ++cand) {
    std::uint64_t horizon = cand * horizon_factor;
    bool ok = true;
    std::uint64_t dom = sigma.oracle.domain_size();
    for (std::uint64_t m = sigma.length + 1; m <= horizon && ok; ++m) {
      std::uint64_t pos = m - 1;  // position decided when length reaches m
      if (pos < cand || pos % k != i) ++dom;
      if (Ratio(Int(dom), Int(m)) <= 1 - epsilon) ok = false;
    }
    if (ok) {
      m0 = cand;
      break;
    }
  }
  if (!m0) throw resource_error("build_F: no m0 within the cap");

  std::vector<OracleEntry> entries;
  for (const auto& [pos, c] : sigma.oracle.entries())
    entries.push_back({pos, c.value, c.delay});
  for (std::uint64_t m = sigma.length; m < out_len; ++m) {
    if (m < *m0 || m % k != i) {
      if (m >= a.size())
        throw precondition_error("build_F: prefix a too short for position " +
                                 std::to_string(m));
      entries.push_back({m, a.bit(static_cast<std::size_t>(m)), 0});
    } else {
      auto c = x.at((m - i) / k);
      if (c) entries.push_back({m, c->value, c->delay});
    }
  }
  return {PartialOracle::from_entries(entries), *m0};
}

FinitePartialOracle halt_late(
    const FinitePartialOracle& tau,
    const std::vector<std::pair<std::uint64_t, int>>& additions,
    std::uint64_t l_floor) {
  std::vector<OracleEntry> entries;
  for (const auto& [pos, c] : tau.oracle.entries())
    entries.push_back({pos, c.value, c.delay});
  for (const auto& [pos, value] : additions) {
    if (pos >= tau.length)
      throw precondition_error("halt_late: position out of range");
    if (tau.oracle.converges(pos))
      throw precondition_error("halt_late: position " + std::to_string(pos) +
                               " already converged");
    entries.push_back({pos, value, l_floor + 1});
  }
  return FinitePartialOracle::make(tau.length,
                                   PartialOracle::from_entries(entries));
}

std::optional<PsiResult> psi_search(const EnumOperator& op,
                                    const FinitePartialOracle& sigma,
                                    const PartialOracle& f, std::uint64_t n,
                                    std::uint64_t length_cap,
                                    std::uint64_t stage_cap,
                                    unsigned subset_bit_cap) {
  // Every candidate contains sigma, so sigma itself must sit inside f.
  for (const auto& [pos, c] : sigma.oracle.entries()) {
    auto fc = f.at(pos);
    if (!fc || fc->value != c.value) return std::nullopt;
  }

  std::vector<OracleEntry> base;
  for (const auto& [pos, c] : sigma.oracle.entries())
    base.push_back({pos, c.value, c.delay});

  std::vector<OracleEntry> extra;
  for (const auto& [pos, c] : f.entries())
    if (pos >= sigma.length && pos < length_cap)
      extra.push_back({pos, c.value, c.delay});
  if (extra.size() > subset_bit_cap)
    throw resource_error("psi_search: " + std::to_string(extra.size()) +
                         " candidate entries exceed the subset cap");

  // Size-then-lexicographic enumeration of the candidate domains.
  const std::size_t c = extra.size();
  for (std::size_t size = 0; size <= c; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t j = 0; j < size; ++j) idx[j] = j;
    while (true) {
      std::vector<OracleEntry> entries = base;
      for (std::size_t j : idx) entries.push_back(extra[j]);
      PartialOracle y = PartialOracle::from_entries(entries);
      std::set<int> outputs = eval_op(op, y, n, stage_cap);
      if (!outputs.empty()) return PsiResult{*outputs.begin(), std::move(y)};
      // next combination
      std::size_t j = size;
      while (j > 0 && idx[j - 1] == c - size + (j - 1)) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t t = j; t < size; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace glab
