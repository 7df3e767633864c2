#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rescot/abstraction.hpp"
#include "rescot/resilience.hpp"
#include "rescot/system.hpp"

namespace rescot {

/* Disturbance injection plan: explicit spike values at strictly increasing
 * steps, plus the policy for every other step. Spike values must lie in
 * w_high but outside w_normal. */
struct SpikeSchedule {
  enum class Nominal { kZero, kConstant, kRandomInNormal };

  std::vector<std::pair<std::uint64_t, std::vector<double>>> spikes;
  Nominal nominal = Nominal::kZero;
  std::vector<double> constant_w;
  std::uint64_t seed = 0;

  void validate(const SampledSystem& sys) const;  // throws ConfigError
};

struct TraceStep {
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> w;
  StateId cell = 0;
  bool spike = false;
  std::string verdict;  // "ok" or the terminal event
};

struct Trace {
  std::vector<TraceStep> steps;
  std::string final_verdict;  // "ok", "out_of_domain", "obstacle", "controller_undefined"
};

/* Continuous-state feedback law refined from the abstract controller: the
 * action at x is the stitched controller's action at quantize(x). Carries the
 * mutable switching state (the active sub-controller), so clone one instance
 * per concurrent simulation. */
class RefinedController {
 public:
  RefinedController(const Quantizer& quantizer, const BimodalAbstraction& gamma,
                    const ResilientController& rc);

  /* select the sub-controller for the start state; throws DomainError when x
   * has resilience 0 or lies outside the domain */
  void reset(std::span<const double> x0);

  /* input values for the current state; throws DomainError outside the
   * controller domain */
  std::vector<double> action_values(std::span<const double> x) const;

  /* action index the active sub-controller picks at cell q, or -1 */
  std::int32_t action_index(StateId q) const;

  /* advance the switching state after observing the next cell: a successor
   * outside the normal map of (q, u) counts as a spike and re-selects the
   * sub-controller for the landing cell; returns whether a switch happened */
  bool observe(StateId q, ActionId u, StateId q_next);

  const Quantizer& quantizer() const { return *quantizer_; }
  const BimodalAbstraction& abstraction() const { return *gamma_; }
  const ResilientController& abstract_controller() const { return *rc_; }

 private:
  const Quantizer* quantizer_;
  const BimodalAbstraction* gamma_;
  const ResilientController* rc_;
  std::int32_t active_sub_ = -1;
};

RefinedController refine(const Quantizer& quantizer, const BimodalAbstraction& gamma,
                         const ResilientController& rc);

/* Closed-loop rollout for `horizon` steps (shorter if the trajectory leaves
 * the domain, enters an obstacle, or exhausts the controller; those outcomes
 * are verdicts, not errors). Deterministic for a fixed schedule seed. */
Trace simulate_closed_loop(const SampledSystem& sys, RefinedController controller,
                           std::span<const double> x0, const SpikeSchedule& schedule,
                           std::uint64_t horizon);

/* number of steps whose disturbance fell outside w_normal */
std::uint64_t num_spikes(const Trace& trace);

/* abstract-trace variant: steps that used a disturbance edge */
std::uint64_t num_spikes(const BimodalAbstraction& gamma,
                         const std::vector<std::tuple<StateId, ActionId, StateId>>& abstract_trace);

/* Model check of the stitched controller: explores the product of the
 * abstraction under the controller with a spike budget (the environment picks
 * successors and spike timing) and accepts iff no reachable stuck
 * configuration exists and every reachable cycle has even maximum color.
 * Finite values check plays with fewer than k spikes; omega checks every
 * budget up to |Q|+1; omega+1 checks the unbounded-spike product. */
bool verify_k_resilient(const BimodalAbstraction& gamma, const ResilientController& rc, StateId q0,
                        ResilienceValue k);

}  // namespace rescot
