#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glab/oracle.hpp"
#include "glab/prefix.hpp"
#include "glab/ratio.hpp"

namespace glab {

// ---------------------------------------------------------------------------
// Marker construction
// ---------------------------------------------------------------------------

// A computably-enumerable set presented by its enumeration schedule:
// stage s |-> values newly enumerated at stage s. Values are never retracted.
struct CESchedule {
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_stage;

  // Everything enumerated at stages <= stage.
  std::set<std::uint64_t> enumerated_by(std::uint64_t stage) const;
};

// Marker p_{e,s}: strategy e marked node sigma at stage s. Nodes are binary
// strings ('0'/'1'), root = "".
struct Marker {
  unsigned strategy;
  unsigned stage;
  std::string node;

  bool operator==(const Marker&) const = default;
};

// Forbidden zone: extensions of node may not receive the last 2^{block -
// exponent} elements of the dyadic block P_block.
struct Zone {
  std::string node;
  unsigned block;
  unsigned exponent;

  bool operator==(const Zone&) const = default;
};

struct MarkerTrace {
  unsigned stages = 0;     // stages simulated: s = 0 .. stages-1
  unsigned depth = 0;      // depth cap D for tree tests and paths
  bool we_bound_uses_2e = false;
  std::vector<Marker> markers;  // chronological
  std::vector<Zone> zones;      // chronological, one per marker

  bool node_marked_by(unsigned strategy, const std::string& node) const;
};

// Stage-by-stage simulation: at stage s each strategy e < s tests whether
// some depth-cap node still survives (its committed enumeration below 2^s
// covers W_e below 2^s) and, if so, marks the shortest of its unmarked nodes
// along the leftmost surviving depth-cap path, banning the last 2^{s-e}
// elements of P_s for extensions of the marked node.
MarkerTrace run_marker_construction(const std::vector<CESchedule>& schedules,
                                    unsigned stages, unsigned depth_cap,
                                    bool we_bound_uses_2e = false);

// Same, but markers land on the shortest unmarked initial segment of the
// supplied stage-s approximation path instead of the leftmost survivor.
MarkerTrace run_marker_construction_redirected(
    const std::vector<CESchedule>& schedules,
    const std::function<Prefix(unsigned /*stage*/)>& approx, unsigned stages,
    unsigned depth_cap, bool we_bound_uses_2e = false);

// Largest ban 2^{block-exponent} over the zones of the trace that sit on
// block `block` and whose node is an initial segment of x. Throws
// precondition_error when x is too short to decide ancestry.
std::uint64_t zone_ban(const MarkerTrace& t, unsigned block, const Prefix& x);

// The set enumerated along x by stage s: each block P_t, t <= s, minus the
// elements banned by applicable zones. Sorted ascending.
std::vector<std::uint64_t> phi_of(const Prefix& x, const MarkerTrace& t,
                                  unsigned s);

// Same set as a characteristic prefix of length 2^{s+1}.
Prefix phi_prefix(const Prefix& x, const MarkerTrace& t, unsigned s);

enum class Halt { halts_1, pending };

const char* halt_name(Halt h);

// Time-independent companion of phi: halts with 1 on n iff every depth-cap
// string consistent with the oracle entries converged by `stage` enumerates
// n. Throws resource_error when more than free_bit_cap positions below the
// depth cap are unconverged.
Halt tilde_phi(const PartialOracle& o, const MarkerTrace& t, std::uint64_t n,
               std::uint64_t stage, unsigned free_bit_cap = 20);

// ---------------------------------------------------------------------------
// Wiggle tree
// ---------------------------------------------------------------------------
// Strings inside the wiggle tree use 1-based positions: a string of length L
// decides membership of the integers 1..L, so nodes of length 2^n - 1 have
// their next 2^n positions ranging exactly over the dyadic block P_n.

// block n, node index within the level |-> selected element of P_n.
using Selector =
    std::function<std::uint64_t(unsigned /*block*/, std::uint64_t /*index*/)>;

Selector default_selector();

struct WiggleTree {
  unsigned blocks = 0;  // N: levels 0..N, level n holds strings of length 2^n-1
  std::vector<std::vector<std::string>> levels;
  // per level n < N: node |-> its selected (free) position m in P_n
  std::vector<std::map<std::string, std::uint64_t>> selections;

  // True iff sigma is extendible to (or extends, beyond the cap) a node of
  // the deepest level.
  bool member(const std::string& sigma) const;
};

// Level n+1 extends each level-n node sigma by the block P_n: all new
// positions 1 except the selected m_sigma, which takes both values.
WiggleTree build_wiggle_tree(unsigned blocks, const Selector& selector);

inline WiggleTree build_wiggle_tree(unsigned blocks) {
  return build_wiggle_tree(blocks, default_selector());
}

struct DiagonalHalt {
  std::uint64_t n_i;  // 1-based position
  int v;              // claimed value; outside {0,1} disables the prune
  std::uint64_t s_i;  // halting stage; must exceed n_i
};

// Keeps sigma with |sigma| < s_i, and sigma with |sigma| >= s_i whose bit at
// position n_i differs from v. No halt, or v outside {0,1}: identity.
WiggleTree diagonal_prune(const WiggleTree& w,
                          const std::optional<DiagonalHalt>& halt);

// sigma (1-based string) is consistent with every supplied row tree: for
// each k, the row extraction (position p of the row = position (2p+1)2^k of
// sigma, as far as sigma reaches) is a member of trees[k].
bool combined_tree_member(const std::string& sigma,
                          const std::vector<WiggleTree>& trees);

// max_{k<l} n_k 2^k, with l = thresholds.size(); requires 2^{-l} < eps/2.
std::uint64_t agreement_threshold(const Ratio& eps,
                                  const std::vector<std::uint64_t>& thresholds);

// Y with Y_i = X_{2i+1}: output bit (2n+1)2^i = input bit (2n+1)2^{2i+1}.
Prefix extract_Y(const Prefix& x, std::uint64_t out_len);

// ---------------------------------------------------------------------------
// String coding and bad strings
// ---------------------------------------------------------------------------

// Length-then-lexicographic bijection of binary strings onto the positive
// integers: "" -> 1, length-i strings -> P_i.
std::uint64_t string_code(const std::string& sigma);
std::string string_decode(std::uint64_t code);

// Characteristic prefix (over string codes, length 2^{max_len+1}) of
// {sigma : sigma is not an initial segment of a}, for |sigma| <= max_len.
Prefix bad_strings(const Prefix& a, unsigned max_len);

// Halts with 1 iff some converged oracle bit below |sigma| differs from
// sigma. sigma uses ordinary 0-based real positions.
Halt bad_string_reduce(const PartialOracle& o, const std::string& sigma);

// 2^{i - #converged inputs below i}: the count of length-i strings
// consistent with the oracle.
std::uint64_t agreeing_strings_count(const PartialOracle& o, unsigned i);

// True iff no string in w_e is an initial segment of x.
bool pi01_consistent(const std::vector<std::string>& w_e, const Prefix& x);

// Searches strings X of length <= length_cap in length-lex order for one
// whose mask above m makes the operator halt on n; returns the smallest
// output of the first hit.
std::optional<int> oneg_psi_search(const EnumOperator& op, std::uint64_t m,
                                   std::uint64_t n, unsigned length_cap);

}  // namespace glab
