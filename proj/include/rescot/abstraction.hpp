#pragma once

#include <cstdint>
#include <vector>

#include "rescot/system.hpp"
#include "rescot/transition_map.hpp"

namespace rescot {

/* Finite abstraction with two transition maps: `normal` over-approximates the
 * sampled dynamics under the everyday disturbance set, `dist` holds exactly
 * the extra successors that only a disturbance spike can produce. The two
 * maps are disjoint at every (q, u). The last state id is the absorbing
 * out-of-domain sink when the abstraction was built from a grid. */
struct BimodalAbstraction {
  StateId num_states = 0;
  ActionId num_actions = 0;
  SuccessorMap normal;
  SuccessorMap dist;
  std::vector<int> colors;
  std::vector<std::uint8_t> obstacle;

  bool action_enabled(StateId q, ActionId u) const { return !normal.empty_at(q, u); }

  std::vector<ActionId> enabled_actions(StateId q) const {
    std::vector<ActionId> out;
    for (ActionId u = 0; u < num_actions; ++u)
      if (action_enabled(q, u)) out.push_back(u);
    return out;
  }

  int max_color() const;

  /* checks disjointness, the rule that disturbance successors only exist for
   * enabled actions, and array sizes; throws InternalError */
  void validate() const;
};

/* convenience constructor for hand-written fixtures and generated instances */
BimodalAbstraction make_bimodal(StateId num_states, ActionId num_actions,
                                std::vector<std::vector<StateId>> normal_rows,
                                std::vector<std::vector<StateId>> dist_rows,
                                std::vector<int> colors);

/* color the out-of-domain sink: smallest odd color that is >= every color
 * used by the map, so an absorbed play always violates the parity condition */
int worst_odd_color(int max_used_color);

struct AbstractionBuildStats {
  std::uint64_t wide_attainable_warnings = 0;  // attainable box wider than the whole domain
};

/* One-shot over-approximating abstraction of the tau-sampled dynamics under
 * disturbance box W: for every cell and input, the cell center is integrated
 * with the disturbance fixed at zero while the attainable-set radius starts
 * at eta/2 and follows the growth bound with w_radius set to the componentwise
 * magnitude bound of W; successors are all cells meeting the resulting box,
 * plus the out-of-domain sink if it leaves the domain on a non-periodic
 * dimension. Deterministic; embarrassingly parallel over (q, u). */
SuccessorMap find_abstraction(const SampledSystem& sys, const Quantizer& quantizer, const Box& W,
                              unsigned jobs = 1, AbstractionBuildStats* stats = nullptr);

struct LiftedColors {
  std::vector<int> colors;            // per grid cell, out-of-domain excluded
  std::vector<std::uint8_t> obstacle;
};

/* Lifts the color map to cells. Each cell is sampled at its center and at
 * every corner (nudged inside the half-open cell); disagreeing samples mean
 * the cell straddles a color or obstacle boundary and raise ConfigError
 * naming the cell, since regions must be aligned to the grid. */
LiftedColors lift_colors(const Quantizer& quantizer, const ColorMap& cmap);

/* Rewrites every obstacle state into a self-loop on all of its enabled
 * actions, with no disturbance successors; transitions into obstacles are
 * preserved. */
BimodalAbstraction apply_obstacle_sinks(BimodalAbstraction gamma,
                                        const std::vector<std::uint8_t>& obstacle);

/* FindRiskAwareAbstraction: builds the two abstractions with w_normal and
 * w_high under the same parameters, takes the pointwise set difference for
 * the disturbance map, lifts colors and installs obstacle sinks. */
BimodalAbstraction find_risk_aware_abstraction(const SampledSystem& sys, const Quantizer& quantizer,
                                               const ColorMap& cmap, unsigned jobs = 1,
                                               AbstractionBuildStats* stats = nullptr);

struct FrrSampleReport {
  std::uint64_t samples = 0;             // samples actually evaluated
  std::uint64_t violations_normal = 0;   // successor under w_normal escaped delta_nor
  std::uint64_t violations_high = 0;     // successor under w_high escaped delta_nor u delta_dist
  std::uint64_t total() const { return violations_normal + violations_high; }
};

/* Statistical soundness check of the two containment conditions: draws random
 * (x, u, w) with w from w_normal and from w_high and counts abstract-successor
 * escapes. Samples landing in obstacle cells are re-drawn because the sink
 * rewrite intentionally decouples those cells from the dynamics. */
FrrSampleReport check_frr_sample(const SampledSystem& sys, const BimodalAbstraction& gamma,
                                 const Quantizer& quantizer, std::uint64_t samples,
                                 std::uint64_t seed);

}  // namespace rescot
