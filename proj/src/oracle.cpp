#include "glab/oracle.hpp"

#include <algorithm>

#include "glab/errors.hpp"

namespace glab {

PartialOracle PartialOracle::from_entries(
    const std::vector<OracleEntry>& entries, std::optional<Prefix> target) {
  PartialOracle o;
  o.target_ = std::move(target);
  for (const auto& e : entries) {
    if (e.value != 0 && e.value != 1)
      throw parse_error("oracle value must be 0 or 1 at input " +
                        std::to_string(e.input));
    auto [it, inserted] = o.entries_.emplace(e.input, Converged{e.value, e.delay});
    if (!inserted)
      throw parse_error("conflicting oracle entries for input " +
                        std::to_string(e.input));
    if (o.target_ && e.input < o.target_->size() &&
        o.target_->bit(static_cast<std::size_t>(e.input)) != e.value)
      throw parse_error("oracle entry at input " + std::to_string(e.input) +
                        " contradicts its declared target");
  }
  return o;
}

PartialOracle PartialOracle::total_for(const Prefix& p) {
  PartialOracle o;
  for (std::size_t i = 0; i < p.size(); ++i)
    o.entries_.emplace(i, Converged{p.bit(i), 0});
  o.target_ = p;
  return o;
}

std::optional<PartialOracle::Converged> PartialOracle::at(std::uint64_t n) const {
  auto it = entries_.find(n);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> PartialOracle::query(std::uint64_t n,
                                        std::uint64_t budget) const {
  auto it = entries_.find(n);
  if (it == entries_.end() || it->second.delay > budget) return std::nullopt;
  return it->second.value;
}

std::size_t PartialOracle::domain_size_below(std::uint64_t n) const {
  return static_cast<std::size_t>(
      std::distance(entries_.begin(), entries_.lower_bound(n)));
}

std::uint64_t PartialOracle::max_delay() const {
  std::uint64_t m = 0;
  for (const auto& [n, c] : entries_) m = std::max(m, c.delay);
  return m;
}

bool agrees(const PartialOracle& a, const PartialOracle& b) {
  if (a.entries().size() != b.entries().size()) return false;
  auto it = b.entries().begin();
  for (const auto& [n, c] : a.entries()) {
    if (it->first != n || it->second.value != c.value) return false;
    ++it;
  }
  return true;
}

bool extends(const PartialOracle& big, const PartialOracle& small) {
  for (const auto& [n, c] : small.entries()) {
    auto bc = big.at(n);
    if (!bc || bc->value != c.value) return false;
  }
  return true;
}

FinitePartialOracle FinitePartialOracle::make(std::uint64_t length,
                                              PartialOracle oracle) {
  if (!oracle.entries().empty() && oracle.entries().rbegin()->first >= length)
    throw precondition_error("finite partial oracle has an input >= its length");
  return FinitePartialOracle{length, std::move(oracle)};
}

FinitePartialOracle FinitePartialOracle::restrict_to(std::uint64_t n) const {
  std::vector<OracleEntry> kept;
  for (const auto& [input, c] : oracle.entries())
    if (input < n) kept.push_back({input, c.value, c.delay});
  return FinitePartialOracle{n, PartialOracle::from_entries(kept)};
}

PartialOracle MaskedOracle::induced() const {
  std::vector<OracleEntry> entries;
  std::uint64_t stop = base.size();
  if (hi) stop = std::min<std::uint64_t>(stop, *hi);
  for (std::uint64_t n = lo; n < stop; ++n)
    entries.push_back({n, base.bit(static_cast<std::size_t>(n)), 0});
  return PartialOracle::from_entries(entries);
}

std::uint64_t EnumOperator::max_stage() const {
  std::uint64_t m = 0;
  for (const auto& a : axioms) m = std::max(m, a.stage);
  return m;
}

std::set<int> eval_op(const EnumOperator& op, const PartialOracle& o,
                      std::uint64_t n, std::uint64_t stage) {
  std::set<int> outputs;
  for (const auto& a : op.axioms) {
    if (a.input != n || a.stage > stage) continue;
    bool applies = true;
    for (const auto& [input, value] : a.fragment) {
      auto c = o.at(input);
      if (!c || c->delay > stage || c->value != value) {
        applies = false;
        break;
      }
    }
    if (applies) outputs.insert(a.output);
  }
  return outputs;
}

bool is_multivalued(const EnumOperator& op, const PartialOracle& o,
                    std::uint64_t n, std::uint64_t stage) {
  return eval_op(op, o, n, stage).size() >= 2;
}

std::set<int> eval_masked(const EnumOperator& op, const MaskedOracle& m,
                          std::uint64_t n, std::uint64_t stage) {
  return eval_op(op, m.induced(), n, stage);
}

}  // namespace glab
