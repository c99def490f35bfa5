#include "glab/measure.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "glab/errors.hpp"

namespace glab {

namespace {

using Cylinder = std::map<std::uint64_t, int>;  // bit -> forced value

// Axioms that can speak at all for (n, window, stage).
std::vector<const Axiom*> eligible_axioms(const EnumOperator& op,
                                          std::uint64_t n,
                                          const Window& window,
                                          std::uint64_t stage) {
  std::vector<const Axiom*> out;
  for (const auto& a : op.axioms) {
    if (a.input != n || a.stage > stage) continue;
    bool inside = std::all_of(
        a.fragment.begin(), a.fragment.end(),
        [&](const auto& kv) { return window.contains(kv.first); });
    if (inside) out.push_back(&a);
  }
  return out;
}

std::vector<std::uint64_t> relevant_bits(const std::vector<Cylinder>& cyls,
                                         const MeasureConfig& cfg) {
  std::set<std::uint64_t> bits;
  for (const auto& c : cyls)
    for (const auto& [b, v] : c) bits.insert(b);
  if (bits.size() > cfg.bit_cap)
    throw resource_error("measure: " + std::to_string(bits.size()) +
                         " relevant bits exceed the cap of " +
                         std::to_string(cfg.bit_cap));
  return {bits.begin(), bits.end()};
}

bool satisfied(const Cylinder& c, const std::vector<std::uint64_t>& bits,
               std::uint64_t assignment) {
  for (const auto& [b, v] : c) {
    auto it = std::lower_bound(bits.begin(), bits.end(), b);
    std::size_t idx = static_cast<std::size_t>(it - bits.begin());
    if (static_cast<int>((assignment >> idx) & 1u) != v) return false;
  }
  return true;
}

// Exact measure of the union of the cylinders by exhaustive assignment of
// the relevant bits.
Ratio union_measure_exhaustive(const std::vector<Cylinder>& cyls,
                               const MeasureConfig& cfg) {
  auto bits = relevant_bits(cyls, cfg);
  const std::uint64_t total = std::uint64_t{1} << bits.size();
  Int hits = 0;
  for (std::uint64_t a = 0; a < total; ++a)
    for (const auto& c : cyls)
      if (satisfied(c, bits, a)) {
        ++hits;
        break;
      }
  return Ratio(hits, Int(pow2_int(static_cast<unsigned>(bits.size()))));
}

// The same measure by inclusion-exclusion over the cylinders themselves.
Ratio union_measure_ie(std::vector<Cylinder> cyls, const MeasureConfig& cfg) {
  std::sort(cyls.begin(), cyls.end());
  cyls.erase(std::unique(cyls.begin(), cyls.end()), cyls.end());
  if (cyls.size() > cfg.ie_cylinder_cap)
    throw resource_error("measure: " + std::to_string(cyls.size()) +
                         " cylinders exceed the inclusion-exclusion cap");
  Ratio total = 0;
  const std::uint64_t subsets = std::uint64_t{1} << cyls.size();
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    Cylinder merged;
    bool consistent = true;
    int picked = 0;
    for (std::size_t i = 0; i < cyls.size() && consistent; ++i) {
      if (!((mask >> i) & 1u)) continue;
      ++picked;
      for (const auto& [b, v] : cyls[i]) {
        auto [it, inserted] = merged.emplace(b, v);
        if (!inserted && it->second != v) {
          consistent = false;
          break;
        }
      }
    }
    if (!consistent) continue;
    Ratio term = pow2_neg(static_cast<unsigned>(merged.size()));
    if (picked % 2 == 0) term = -term;
    total += term;
  }
  return total;
}

std::vector<Cylinder> halting_cylinders(const MeasureQuery& q) {
  std::vector<Cylinder> cyls;
  for (const Axiom* a : eligible_axioms(q.op, q.n, q.window, q.stage))
    cyls.push_back(a->fragment);
  return cyls;
}

std::vector<Cylinder> output_cylinders(const MeasureQuery& q, int v) {
  std::vector<Cylinder> cyls;
  for (const Axiom* a : eligible_axioms(q.op, q.n, q.window, q.stage))
    if (a->output == v) cyls.push_back(a->fragment);
  return cyls;
}

// One cylinder per consistent pair of eligible axioms with equal input and
// different outputs: exactly the event "some input is multivalued".
std::vector<Cylinder> multivalued_cylinders(
    const EnumOperator& op, const Window& window, std::uint64_t stage,
    const std::vector<std::uint64_t>& inputs) {
  std::vector<Cylinder> cyls;
  for (std::uint64_t n : inputs) {
    auto ax = eligible_axioms(op, n, window, stage);
    for (std::size_t i = 0; i < ax.size(); ++i)
      for (std::size_t j = i + 1; j < ax.size(); ++j) {
        if (ax[i]->output == ax[j]->output) continue;
        Cylinder merged = ax[i]->fragment;
        bool consistent = true;
        for (const auto& [b, v] : ax[j]->fragment) {
          auto [it, inserted] = merged.emplace(b, v);
          if (!inserted && it->second != v) {
            consistent = false;
            break;
          }
        }
        if (consistent) cyls.push_back(std::move(merged));
      }
  }
  return cyls;
}

}  // namespace

Ratio halting_measure(const MeasureQuery& q, const MeasureConfig& cfg) {
  return union_measure_exhaustive(halting_cylinders(q), cfg);
}

Ratio halting_measure_ie(const MeasureQuery& q, const MeasureConfig& cfg) {
  return union_measure_ie(halting_cylinders(q), cfg);
}

Ratio output_measure(const MeasureQuery& q, int v, const MeasureConfig& cfg) {
  return union_measure_exhaustive(output_cylinders(q, v), cfg);
}

Ratio output_measure_ie(const MeasureQuery& q, int v,
                        const MeasureConfig& cfg) {
  return union_measure_ie(output_cylinders(q, v), cfg);
}

Ratio multivalued_measure(const EnumOperator& op, const Window& window,
                          std::uint64_t stage,
                          const std::vector<std::uint64_t>& inputs,
                          const MeasureConfig& cfg) {
  return union_measure_exhaustive(
      multivalued_cylinders(op, window, stage, inputs), cfg);
}

Ratio multivalued_measure_ie(const EnumOperator& op, const Window& window,
                             std::uint64_t stage,
                             const std::vector<std::uint64_t>& inputs,
                             const MeasureConfig& cfg) {
  return union_measure_ie(multivalued_cylinders(op, window, stage, inputs),
                          cfg);
}

MonotonicityReport mu_monotonicity_check(const EnumOperator& op,
                                         std::uint64_t n, std::uint64_t k_max,
                                         std::uint64_t l_max,
                                         std::uint64_t stage,
                                         const MeasureConfig& cfg) {
  MonotonicityReport r;
  std::uint64_t max_bit = 0;
  for (const auto& a : op.axioms)
    for (const auto& [b, v] : a.fragment) max_bit = std::max(max_bit, b);
  r.stabilization_l = max_bit + 1;

  auto mu = [&](std::uint64_t k, std::optional<std::uint64_t> l,
                std::uint64_t st) {
    return halting_measure({op, n, Window{k, l}, st}, cfg);
  };

  for (std::uint64_t k = 0; k <= k_max; ++k) {
    Ratio unbounded = mu(k, std::nullopt, stage);
    Ratio prev_l = 0;
    for (std::uint64_t l = k; l <= l_max; ++l) {
      Ratio here = mu(k, l, stage);
      if (here < prev_l) {
        r.monotone_in_l = false;
        r.violations.push_back("mu decreased in l at k=" + std::to_string(k) +
                               ", l=" + std::to_string(l));
      }
      prev_l = here;
      if (k > 0 && mu(k - 1, l, stage) < here) {
        r.antitone_in_k = false;
        r.violations.push_back("mu increased in k at k=" + std::to_string(k) +
                               ", l=" + std::to_string(l));
      }
      if (stage > 0 && mu(k, l, stage - 1) > here) {
        r.monotone_in_stage = false;
        r.violations.push_back("mu decreased in stage at k=" +
                               std::to_string(k) + ", l=" + std::to_string(l));
      }
      if (l >= r.stabilization_l && here != unbounded) {
        r.stabilizes = false;
        r.violations.push_back("mu not stabilized at k=" + std::to_string(k) +
                               ", l=" + std::to_string(l));
      }
    }
  }
  return r;
}

std::vector<ChainFloor> build_U_chain(const EnumOperator& op, std::uint64_t n,
                                      std::uint64_t k, unsigned depth,
                                      const MeasureConfig& cfg) {
  if (depth < 1) throw precondition_error("build_U_chain: depth >= 1");
  std::vector<Cylinder> cyls;
  for (const auto& a : op.axioms)
    if (a.input == n) cyls.push_back(a.fragment);
  auto bits = relevant_bits(cyls, cfg);

  std::vector<Int> survivors(depth + 1, 0);
  const std::uint64_t total = std::uint64_t{1} << bits.size();
  survivors[0] = Int(total);
  for (std::uint64_t asn = 0; asn < total; ++asn) {
    std::uint64_t k_cur = k;
    for (unsigned lvl = 1; lvl <= depth; ++lvl) {
      // Least next mask start over the reasons available in [k_cur, inf).
      std::optional<std::uint64_t> k_next;
      for (const auto& a : op.axioms) {
        if (a.input != n) continue;
        bool applies = true;
        std::uint64_t max_dom = 0;
        for (const auto& [b, v] : a.fragment) {
          if (b < k_cur) {
            applies = false;
            break;
          }
          max_dom = std::max(max_dom, b);
          auto it = std::lower_bound(bits.begin(), bits.end(), b);
          std::size_t idx = static_cast<std::size_t>(it - bits.begin());
          if (static_cast<int>((asn >> idx) & 1u) != v) {
            applies = false;
            break;
          }
        }
        if (!applies) continue;
        std::uint64_t bound =
            std::max(a.stage + 1,
                     a.fragment.empty() ? k_cur : max_dom + 1);
        k_next = k_next ? std::min(*k_next, bound) : bound;
      }
      if (!k_next) break;
      ++survivors[lvl];
      k_cur = *k_next;
    }
  }

  std::vector<ChainFloor> out;
  Int denom = pow2_int(static_cast<unsigned>(bits.size()));
  for (unsigned i = 0; i <= depth; ++i)
    out.push_back({"U_" + std::to_string(i), Ratio(survivors[i], denom)});
  return out;
}

std::optional<Tower> greedy_90_tower(const EnumOperator& op, std::uint64_t n,
                                     std::uint64_t k, unsigned floors,
                                     std::uint64_t l_cap,
                                     const MeasureConfig& cfg) {
  if (floors < 1) throw precondition_error("greedy_90_tower: floors >= 1");
  Tower t{TowerKind::halting90, {k}, std::nullopt};
  std::uint64_t stage = op.max_stage();
  for (unsigned i = 0; i < floors; ++i) {
    std::uint64_t k_i = t.boundaries.back();
    std::optional<std::uint64_t> found;
    for (std::uint64_t l = k_i + 1; l <= l_cap; ++l) {
      // Greedy search accepts the threshold itself; the tower definition
      // proper is strict.
      if (halting_measure({op, n, Window{k_i, l}, stage}, cfg) >=
          cfg.halt_threshold) {
        found = l;
        break;
      }
    }
    if (!found) return std::nullopt;
    t.boundaries.push_back(*found);
  }
  return t;
}

Classification classify_80(const Tower& t, const EnumOperator& op,
                           std::uint64_t n, const MeasureConfig& cfg) {
  if (t.kind != TowerKind::halting90)
    throw precondition_error("classify_80: needs a halting tower");
  std::uint64_t stage = op.max_stage();
  std::optional<std::size_t> first0, first1;
  for (std::size_t i = 0; i + 1 < t.boundaries.size(); ++i) {
    MeasureQuery q{op, n, Window{t.boundaries[i], t.boundaries[i + 1]}, stage};
    if (!first0 && output_measure(q, 0, cfg) > cfg.agree_threshold) first0 = i;
    if (!first1 && output_measure(q, 1, cfg) > cfg.agree_threshold) first1 = i;
    if (first0 && first1)
      return {Classification::Kind::double_consensus, 0, i};
  }
  if (first0) return {Classification::Kind::agreement, 0, *first0};
  if (first1) return {Classification::Kind::agreement, 1, *first1};
  return {Classification::Kind::no_consensus, 0, 0};
}

std::optional<Tower> greedy_60_tower(const EnumOperator& op, std::uint64_t m0,
                                     unsigned floors, std::uint64_t step,
                                     std::uint64_t cap, std::uint64_t stage,
                                     const std::vector<std::uint64_t>& inputs,
                                     const MeasureConfig& cfg) {
  if (floors < 1 || step < 1)
    throw precondition_error("greedy_60_tower: floors >= 1 and step >= 1");
  Tower t{TowerKind::disagreement60, {m0}, std::nullopt};
  for (unsigned i = 0; i < floors; ++i) {
    std::uint64_t m_i = t.boundaries.back();
    std::optional<std::uint64_t> found;
    for (std::uint64_t m = m_i + step; m <= cap; m += step) {
      if (multivalued_measure(op, Window{m_i, m}, stage, inputs, cfg) >
          cfg.disagree_threshold) {
        found = m;
        break;
      }
    }
    if (!found) return std::nullopt;
    t.boundaries.push_back(*found);
  }
  return t;
}

VoteResult majority_vote(const EnumOperator& op, std::uint64_t n,
                         std::uint64_t l, std::uint64_t stage_cap,
                         const MeasureConfig& cfg) {
  for (std::uint64_t s = 0; s <= stage_cap; ++s) {
    MeasureQuery q{op, n, Window{l, std::nullopt}, s};
    for (int v : {0, 1})
      if (output_measure(q, v, cfg) > cfg.agree_threshold)
        return {false, v, s};
  }
  return {};
}

std::vector<FloorStats> tower_stats(const EnumOperator& op, std::uint64_t n,
                                    const Tower& t, std::uint64_t stage,
                                    const MeasureConfig& cfg) {
  std::vector<FloorStats> out;
  for (std::size_t i = 0; i + 1 < t.boundaries.size(); ++i) {
    Window w{t.boundaries[i], t.boundaries[i + 1]};
    MeasureQuery q{op, n, w, stage};
    out.push_back({static_cast<unsigned>(i), w.lo, *w.hi,
                   halting_measure(q, cfg), output_measure(q, 0, cfg),
                   output_measure(q, 1, cfg),
                   multivalued_measure(op, w, stage, {n}, cfg)});
  }
  return out;
}

}  // namespace glab
