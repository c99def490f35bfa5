#include "glab/construction.hpp"

#include <algorithm>
#include <bit>

#include "glab/errors.hpp"

namespace glab {

namespace {

std::uint64_t block_of(std::uint64_t m) {
  return 63u - static_cast<std::uint64_t>(std::countl_zero(m));
}

bool is_prefix_of_string(const std::string& sigma, const std::string& tau) {
  return sigma.size() <= tau.size() &&
         std::equal(sigma.begin(), sigma.end(), tau.begin());
}

// Zone node pre-encoded for fast ancestry tests against depth-cap nodes
// represented as integers (MSB-first bit strings of length depth).
struct EncodedZone {
  std::uint64_t value;
  unsigned length;
  unsigned block;
  std::uint64_t ban;  // 2^{block - exponent}
};

std::uint64_t encode_node(const std::string& node) {
  std::uint64_t v = 0;
  for (char c : node) v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  return v;
}

std::string node_of_bits(std::uint64_t v, unsigned length) {
  std::string s(length, '0');
  for (unsigned p = 0; p < length; ++p)
    if ((v >> (length - 1 - p)) & 1u) s[p] = '1';
  return s;
}

}  // namespace

std::set<std::uint64_t> CESchedule::enumerated_by(std::uint64_t stage) const {
  std::set<std::uint64_t> out;
  for (const auto& [s, values] : by_stage) {
    if (s > stage) break;
    out.insert(values.begin(), values.end());
  }
  return out;
}

bool MarkerTrace::node_marked_by(unsigned strategy,
                                 const std::string& node) const {
  return std::any_of(markers.begin(), markers.end(), [&](const Marker& m) {
    return m.strategy == strategy && m.node == node;
  });
}

namespace {

// Shared engine for the plain and redirected variants. path_for(s, leftmost
// surviving depth-cap node) yields the path whose shortest unmarked node
// gets the stage-s marker.
MarkerTrace run_marker_engine(
    const std::vector<CESchedule>& schedules, unsigned stages,
    unsigned depth_cap, bool we_bound_uses_2e,
    const std::function<std::string(unsigned, std::uint64_t)>& path_for) {
  if (stages < 1) throw precondition_error("marker construction: stages >= 1");
  if (depth_cap < stages)
    throw precondition_error("marker construction: depth cap below stage count");
  if (depth_cap >= 62)
    throw resource_error("marker construction: depth cap too large");

  MarkerTrace trace;
  trace.stages = stages;
  trace.depth = depth_cap;
  trace.we_bound_uses_2e = we_bound_uses_2e;

  std::vector<EncodedZone> zones;
  const std::uint64_t node_count = std::uint64_t{1} << depth_cap;

  for (unsigned s = 1; s < stages; ++s) {
    unsigned active = std::min<std::uint64_t>(s, schedules.size());
    for (unsigned e = 0; e < active; ++e) {
      std::uint64_t w_bound = std::uint64_t{1}
                              << (we_bound_uses_2e ? e : s);
      std::vector<std::uint64_t> w;
      for (std::uint64_t x : schedules[e].enumerated_by(s))
        if (x < w_bound) w.push_back(x);

      // Leftmost depth-cap node whose committed enumeration still covers w.
      std::optional<std::uint64_t> survivor;
      for (std::uint64_t v = 0; v < node_count; ++v) {
        bool ok = true;
        for (std::uint64_t x : w) {
          if (x == 0) {  // the enumeration lives in [1, infinity)
            ok = false;
            break;
          }
          unsigned t = static_cast<unsigned>(block_of(x));
          std::uint64_t ban = 0;
          for (const auto& z : zones)
            if (z.block == t && (v >> (depth_cap - z.length)) == z.value)
              ban = std::max(ban, z.ban);
          if (x >= (std::uint64_t{2} << t) - ban) {
            ok = false;
            break;
          }
        }
        if (ok) {
          survivor = v;
          break;
        }
      }
      if (!survivor) continue;

      std::string path = path_for(s, *survivor);
      std::optional<std::string> node;
      for (std::size_t len = 0; len <= path.size(); ++len) {
        std::string candidate = path.substr(0, len);
        if (!trace.node_marked_by(e, candidate)) {
          node = std::move(candidate);
          break;
        }
      }
      if (!node) continue;  // path fully marked by this strategy

      trace.markers.push_back({e, s, *node});
      trace.zones.push_back({*node, s, e});
      zones.push_back({encode_node(*node), static_cast<unsigned>(node->size()),
                       s, std::uint64_t{1} << (s - e)});
    }
  }
  return trace;
}

}  // namespace

MarkerTrace run_marker_construction(const std::vector<CESchedule>& schedules,
                                    unsigned stages, unsigned depth_cap,
                                    bool we_bound_uses_2e) {
  return run_marker_engine(
      schedules, stages, depth_cap, we_bound_uses_2e,
      [&](unsigned, std::uint64_t survivor) {
        return node_of_bits(survivor, depth_cap);
      });
}

MarkerTrace run_marker_construction_redirected(
    const std::vector<CESchedule>& schedules,
    const std::function<Prefix(unsigned)>& approx, unsigned stages,
    unsigned depth_cap, bool we_bound_uses_2e) {
  return run_marker_engine(
      schedules, stages, depth_cap, we_bound_uses_2e,
      [&](unsigned s, std::uint64_t) {
        Prefix p = approx(s);
        std::size_t len = std::min<std::size_t>(p.size(), depth_cap);
        std::string path(len, '0');
        for (std::size_t i = 0; i < len; ++i)
          if (p.bit(i)) path[i] = '1';
        return path;
      });
}

std::uint64_t zone_ban(const MarkerTrace& t, unsigned block, const Prefix& x) {
  std::uint64_t ban = 0;
  for (const auto& z : t.zones) {
    if (z.block != block) continue;
    if (z.node.size() > x.size())
      throw precondition_error(
          "zone_ban: prefix too short to decide zone ancestry");
    bool ancestor = true;
    for (std::size_t i = 0; i < z.node.size(); ++i)
      if ((z.node[i] == '1') != (x.bit(i) == 1)) {
        ancestor = false;
        break;
      }
    if (ancestor)
      ban = std::max(ban, std::uint64_t{1} << (z.block - z.exponent));
  }
  return ban;
}

std::vector<std::uint64_t> phi_of(const Prefix& x, const MarkerTrace& t,
                                  unsigned s) {
  if (t.stages > 0 && s > t.stages - 1)
    throw precondition_error("phi_of: stage beyond the simulated trace");
  std::vector<std::uint64_t> out;
  for (unsigned blk = 0; blk <= s; ++blk) {
    std::uint64_t ban = zone_ban(t, blk, x);
    for (std::uint64_t m = std::uint64_t{1} << blk;
         m < (std::uint64_t{2} << blk) - ban; ++m)
      out.push_back(m);
  }
  return out;
}

Prefix phi_prefix(const Prefix& x, const MarkerTrace& t, unsigned s) {
  Prefix out(static_cast<std::size_t>(std::uint64_t{2} << s));
  for (std::uint64_t m : phi_of(x, t, s))
    out.set(static_cast<std::size_t>(m), 1);
  return out;
}

const char* halt_name(Halt h) {
  return h == Halt::halts_1 ? "halts_1" : "pending";
}

Halt tilde_phi(const PartialOracle& o, const MarkerTrace& t, std::uint64_t n,
               std::uint64_t stage, unsigned free_bit_cap) {
  if (n == 0) return Halt::pending;  // no block ever enumerates 0
  unsigned s = static_cast<unsigned>(block_of(n));
  const unsigned depth = t.depth;

  Prefix base(depth);
  std::vector<std::size_t> free_positions;
  for (std::size_t i = 0; i < depth; ++i) {
    auto c = o.at(i);
    if (c && c->delay <= stage) {
      base.set(i, c->value);
    } else {
      free_positions.push_back(i);
    }
  }
  if (free_positions.size() > free_bit_cap)
    throw resource_error("tilde_phi: " +
                         std::to_string(free_positions.size()) +
                         " unconverged positions exceed the cap");

  const std::uint64_t combos = std::uint64_t{1} << free_positions.size();
  for (std::uint64_t c = 0; c < combos; ++c) {
    Prefix y = base;
    for (std::size_t j = 0; j < free_positions.size(); ++j)
      y.set(free_positions[j], static_cast<int>((c >> j) & 1u));
    std::uint64_t ban = zone_ban(t, s, y);
    bool contains = n >= (std::uint64_t{1} << s) &&
                    n < (std::uint64_t{2} << s) - ban;
    if (!contains) return Halt::pending;
  }
  return Halt::halts_1;
}

// ---------------------------------------------------------------------------
// Wiggle tree
// ---------------------------------------------------------------------------

Selector default_selector() {
  return [](unsigned block, std::uint64_t index) {
    return (std::uint64_t{1} << block) + index;
  };
}

bool WiggleTree::member(const std::string& sigma) const {
  if (levels.empty()) return sigma.empty();
  const auto& deepest = levels.back();
  const std::size_t cap = deepest.empty() ? 0 : deepest.front().size();
  if (sigma.size() <= cap) {
    return std::any_of(deepest.begin(), deepest.end(), [&](const auto& node) {
      return is_prefix_of_string(sigma, node);
    });
  }
  std::string head = sigma.substr(0, cap);
  return std::find(deepest.begin(), deepest.end(), head) != deepest.end();
}

WiggleTree build_wiggle_tree(unsigned blocks, const Selector& selector) {
  if (blocks >= 6)
    throw resource_error("wiggle tree: block count too large for desk scale");
  WiggleTree w;
  w.blocks = blocks;
  w.levels.push_back({std::string{}});
  for (unsigned n = 0; n < blocks; ++n) {
    const std::uint64_t lo = std::uint64_t{1} << n;
    const std::uint64_t hi = std::uint64_t{2} << n;
    const auto& level = w.levels.back();
    std::map<std::string, std::uint64_t> sel;
    std::set<std::uint64_t> used;
    std::vector<std::string> next;
    for (std::uint64_t idx = 0; idx < level.size(); ++idx) {
      std::uint64_t m = selector(n, idx);
      if (m < lo || m >= hi)
        throw precondition_error("wiggle tree: selected element outside block");
      if (!used.insert(m).second)
        throw precondition_error("wiggle tree: selector repeats an element");
      const std::string& sigma = level[idx];
      sel.emplace(sigma, m);
      // Extension of length 2^{n+1}-1: positions lo..hi-1 (1-based) are the
      // new ones; all 1 except position m, which takes both values.
      for (int v : {0, 1}) {
        std::string tau = sigma;
        tau.resize(static_cast<std::size_t>(hi - 1), '1');
        tau[static_cast<std::size_t>(m - 1)] = static_cast<char>('0' + v);
        next.push_back(std::move(tau));
      }
    }
    w.selections.push_back(std::move(sel));
    w.levels.push_back(std::move(next));
  }
  return w;
}

WiggleTree diagonal_prune(const WiggleTree& w,
                          const std::optional<DiagonalHalt>& halt) {
  if (!halt || (halt->v != 0 && halt->v != 1)) return w;
  if (halt->s_i <= halt->n_i)
    throw precondition_error("diagonal_prune: halting stage must exceed the "
                             "diagonalized position");
  const char banned = static_cast<char>('0' + halt->v);
  WiggleTree out;
  out.blocks = w.blocks;
  out.levels.resize(w.levels.size());
  out.selections.resize(w.selections.size());
  for (std::size_t lvl = 0; lvl < w.levels.size(); ++lvl) {
    for (const auto& sigma : w.levels[lvl]) {
      if (sigma.size() >= halt->s_i &&
          sigma[static_cast<std::size_t>(halt->n_i - 1)] == banned)
        continue;
      out.levels[lvl].push_back(sigma);
      if (lvl < w.selections.size()) {
        auto it = w.selections[lvl].find(sigma);
        if (it != w.selections[lvl].end())
          out.selections[lvl].insert(*it);
      }
    }
  }
  return out;
}

bool combined_tree_member(const std::string& sigma,
                          const std::vector<WiggleTree>& trees) {
  for (std::size_t k = 0; k < trees.size(); ++k) {
    std::string r;
    for (std::uint64_t p = 1;; ++p) {
      std::uint64_t pos = (2 * p + 1) << k;  // 1-based position within sigma
      if (pos > sigma.size()) break;
      r.push_back(sigma[static_cast<std::size_t>(pos - 1)]);
    }
    if (!trees[k].member(r)) return false;
  }
  return true;
}

std::uint64_t agreement_threshold(
    const Ratio& eps, const std::vector<std::uint64_t>& thresholds) {
  const unsigned l = static_cast<unsigned>(thresholds.size());
  if (l == 0 || pow2_neg(l) >= eps / 2)
    throw precondition_error(
        "agreement_threshold: 2^-l must fall below eps/2");
  std::uint64_t best = 0;
  for (unsigned k = 0; k < l; ++k)
    best = std::max(best, thresholds[k] << k);
  return best;
}

Prefix extract_Y(const Prefix& x, std::uint64_t out_len) {
  Prefix out(static_cast<std::size_t>(out_len));
  for (std::uint64_t m = 1; m < out_len; ++m) {
    std::uint64_t i = static_cast<std::uint64_t>(std::countr_zero(m));
    std::uint64_t odd = m >> i;  // 2n+1
    std::uint64_t source = odd << (2 * i + 1);
    if (source >= x.size())
      throw precondition_error("extract_Y: source bit " +
                               std::to_string(source) + " unavailable");
    out.set(static_cast<std::size_t>(m),
            x.bit(static_cast<std::size_t>(source)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// String coding and bad strings
// ---------------------------------------------------------------------------

std::uint64_t string_code(const std::string& sigma) {
  if (sigma.size() >= 63)
    throw resource_error("string_code: string too long");
  std::uint64_t code = 1;
  for (char c : sigma) {
    if (c != '0' && c != '1')
      throw parse_error("string_code: non-binary character");
    code = (code << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return code;
}

std::string string_decode(std::uint64_t code) {
  if (code == 0) throw precondition_error("string_decode: code 0 is invalid");
  unsigned len = static_cast<unsigned>(block_of(code));
  return node_of_bits(code & ((std::uint64_t{1} << len) - 1), len);
}

Prefix bad_strings(const Prefix& a, unsigned max_len) {
  if (max_len > a.size())
    throw precondition_error("bad_strings: max_len exceeds the prefix");
  Prefix out(static_cast<std::size_t>(std::uint64_t{2} << max_len));
  for (std::uint64_t code = 1; code < out.size(); ++code) {
    std::string sigma = string_decode(code);
    bool initial = true;
    for (std::size_t i = 0; i < sigma.size(); ++i)
      if ((sigma[i] == '1') != (a.bit(i) == 1)) {
        initial = false;
        break;
      }
    if (!initial) out.set(static_cast<std::size_t>(code), 1);
  }
  return out;
}

Halt bad_string_reduce(const PartialOracle& o, const std::string& sigma) {
  for (std::size_t n = 0; n < sigma.size(); ++n) {
    auto c = o.at(n);
    if (c && c->value != (sigma[n] == '1' ? 1 : 0)) return Halt::halts_1;
  }
  return Halt::pending;
}

std::uint64_t agreeing_strings_count(const PartialOracle& o, unsigned i) {
  std::size_t converged = o.domain_size_below(i);
  if (converged > i)
    throw precondition_error("agreeing_strings_count: more converged inputs "
                             "than positions");
  return std::uint64_t{1} << (i - converged);
}

bool pi01_consistent(const std::vector<std::string>& w_e, const Prefix& x) {
  for (const auto& sigma : w_e) {
    if (sigma.size() > x.size()) continue;
    bool initial = true;
    for (std::size_t i = 0; i < sigma.size(); ++i)
      if ((sigma[i] == '1') != (x.bit(i) == 1)) {
        initial = false;
        break;
      }
    if (initial) return false;
  }
  return true;
}

std::optional<int> oneg_psi_search(const EnumOperator& op, std::uint64_t m,
                                   std::uint64_t n, unsigned length_cap) {
  if (length_cap >= 22)
    throw resource_error("oneg_psi_search: length cap too large");
  const std::uint64_t stage = op.max_stage();
  for (unsigned len = 0; len <= length_cap; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      Prefix x(len);
      for (unsigned p = 0; p < len; ++p)
        x.set(p, static_cast<int>((v >> (len - 1 - p)) & 1u));
      MaskedOracle masked{x, m, std::nullopt};
      std::set<int> outputs = eval_masked(op, masked, n, stage);
      if (!outputs.empty()) return *outputs.begin();
    }
  }
  return std::nullopt;
}

}  // namespace glab
