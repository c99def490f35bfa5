#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glab/oracle.hpp"
#include "glab/ratio.hpp"

namespace glab {

// Half-open mask window [lo, hi); absent hi means unbounded above.
struct Window {
  std::uint64_t lo = 0;
  std::optional<std::uint64_t> hi;

  bool contains(std::uint64_t m) const {
    return m >= lo && (!hi || m < *hi);
  }
};

// Caps and thresholds. Thresholds are exact rationals; the defaults are
// 9/10 for halting floors, 4/5 for output consensus, 3/5 for disagreement.
struct MeasureConfig {
  unsigned bit_cap = 24;          // exhaustive-assignment relevant bits
  unsigned ie_cylinder_cap = 20;  // inclusion-exclusion cylinder count
  Ratio halt_threshold = Ratio(9, 10);
  Ratio agree_threshold = Ratio(4, 5);
  Ratio disagree_threshold = Ratio(3, 5);
};

struct MeasureQuery {
  EnumOperator op;
  std::uint64_t n = 0;
  Window window;
  std::uint64_t stage = 0;
};

// Measure of {X : the operator halts on n when X is masked to the window},
// exact over the cylinder algebra of the bits mentioned by eligible axioms.
// The _ie variants recompute by inclusion-exclusion; both must agree.
Ratio halting_measure(const MeasureQuery& q, const MeasureConfig& cfg = {});
Ratio halting_measure_ie(const MeasureQuery& q, const MeasureConfig& cfg = {});

// Measure of {X : v is among the outputs on n under the masked window}.
Ratio output_measure(const MeasureQuery& q, int v,
                     const MeasureConfig& cfg = {});
Ratio output_measure_ie(const MeasureQuery& q, int v,
                        const MeasureConfig& cfg = {});

// Measure of {X : some n in inputs has >= 2 outputs under the masked window}.
Ratio multivalued_measure(const EnumOperator& op, const Window& window,
                          std::uint64_t stage,
                          const std::vector<std::uint64_t>& inputs,
                          const MeasureConfig& cfg = {});
Ratio multivalued_measure_ie(const EnumOperator& op, const Window& window,
                             std::uint64_t stage,
                             const std::vector<std::uint64_t>& inputs,
                             const MeasureConfig& cfg = {});

struct MonotonicityReport {
  bool antitone_in_k = true;
  bool monotone_in_l = true;
  bool monotone_in_stage = true;
  bool stabilizes = true;
  std::uint64_t stabilization_l = 0;  // l past which mu_{k,l} = mu_k
  std::vector<std::string> violations;

  bool ok() const {
    return antitone_in_k && monotone_in_l && monotone_in_stage && stabilizes;
  }
};

// Checks the window-measure monotonicity laws over k <= k_max, l <= l_max.
MonotonicityReport mu_monotonicity_check(const EnumOperator& op,
                                         std::uint64_t n, std::uint64_t k_max,
                                         std::uint64_t l_max,
                                         std::uint64_t stage,
                                         const MeasureConfig& cfg = {});

struct ChainFloor {
  std::string description;
  Ratio mu;
};

// U_0 = full space; U_{i+1} = those X in U_i for which the operator halts
// again with its mask pushed past everything (bits and stages) the previous
// reason used. Exact measures for i = 0..depth.
std::vector<ChainFloor> build_U_chain(const EnumOperator& op, std::uint64_t n,
                                      std::uint64_t k, unsigned depth,
                                      const MeasureConfig& cfg = {});

enum class TowerKind { halting90, agreement80, disagreement60 };

struct Tower {
  TowerKind kind;
  std::vector<std::uint64_t> boundaries;  // k_0 < k_1 < ... (floors+1 entries)
  std::optional<int> agreement_value;
};

// k_0 = k; k_{i+1} = least l <= l_cap with window halting measure >= the
// halting threshold. Empty result when the cap is hit.
std::optional<Tower> greedy_90_tower(const EnumOperator& op, std::uint64_t n,
                                     std::uint64_t k, unsigned floors,
                                     std::uint64_t l_cap,
                                     const MeasureConfig& cfg = {});

struct Classification {
  enum class Kind { agreement, no_consensus, double_consensus } kind;
  int value = 0;            // agreement only
  std::size_t floor_index = 0;  // double_consensus: first floor seeing both
};

// Per-floor output consensus of a halting tower: a floor consents to v when
// its output-v measure strictly exceeds the agreement threshold.
Classification classify_80(const Tower& t, const EnumOperator& op,
                           std::uint64_t n, const MeasureConfig& cfg = {});

// m_0 = m0; m_{i+1} = first boundary of the form m_i + step*j, <= cap, whose
// window multivalued measure strictly exceeds the disagreement threshold.
std::optional<Tower> greedy_60_tower(const EnumOperator& op, std::uint64_t m0,
                                     unsigned floors, std::uint64_t step,
                                     std::uint64_t cap, std::uint64_t stage,
                                     const std::vector<std::uint64_t>& inputs,
                                     const MeasureConfig& cfg = {});

struct VoteResult {
  bool timed_out = true;
  int value = 0;
  std::uint64_t stage = 0;
};

// Least stage at which the output measure over the mask [l, infinity)
// strictly exceeds the agreement threshold for some value.
VoteResult majority_vote(const EnumOperator& op, std::uint64_t n,
                         std::uint64_t l, std::uint64_t stage_cap,
                         const MeasureConfig& cfg = {});

struct FloorStats {
  unsigned floor;
  std::uint64_t lo;
  std::uint64_t hi;
  Ratio mu_halt;
  Ratio mu_out0;
  Ratio mu_out1;
  Ratio mu_multi;
};

std::vector<FloorStats> tower_stats(const EnumOperator& op, std::uint64_t n,
                                    const Tower& t, std::uint64_t stage,
                                    const MeasureConfig& cfg = {});

}  // namespace glab
