#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rescot/abstraction.hpp"
#include "rescot/games.hpp"

namespace rescot {

/* Ordinal-valued resilience: Fin(0) < Fin(1) < ... < omega < omega+1.
 * Fin(k) means the controller survives every play with fewer than k spikes,
 * omega means every finite number of spikes, omega+1 means infinitely many. */
class ResilienceValue {
 public:
  static ResilienceValue finite(std::uint32_t k) { return ResilienceValue(k); }
  static ResilienceValue omega() { return ResilienceValue(kOmegaRaw); }
  static ResilienceValue omega_plus_one() { return ResilienceValue(kOmegaPlusOneRaw); }

  bool is_finite() const { return raw_ < kOmegaRaw; }
  bool is_omega() const { return raw_ == kOmegaRaw; }
  bool is_omega_plus_one() const { return raw_ == kOmegaPlusOneRaw; }
  std::uint32_t finite_value() const;  // throws InternalError when not finite

  auto operator<=>(const ResilienceValue&) const = default;

  std::string to_string() const;
  static ResilienceValue parse(const std::string& text);  // throws ReferenceError

 private:
  static constexpr std::uint32_t kOmegaRaw = std::numeric_limits<std::uint32_t>::max() - 1;
  static constexpr std::uint32_t kOmegaPlusOneRaw = std::numeric_limits<std::uint32_t>::max();

  explicit ResilienceValue(std::uint32_t raw) : raw_(raw) {}
  std::uint32_t raw_ = 0;
};

using ResilienceMap = std::vector<ResilienceValue>;

/* partial map from states to finite ranks */
inline constexpr std::uint32_t kUnranked = std::numeric_limits<std::uint32_t>::max();
using Ranking = std::vector<std::uint32_t>;

inline bool ranked(const Ranking& r, StateId q) { return r[q] != kUnranked; }
std::vector<std::uint32_t> ranking_values(const Ranking& r);  // sorted distinct finite ranks

enum class SynthesisMode { kReference, kPaperLiteral };

std::string to_string(SynthesisMode mode);
SynthesisMode parse_mode(const std::string& text);  // throws ConfigError

/* rank 0 exactly on the losing region of the spike-free parity game */
Ranking initial_ranking(const BimodalAbstraction& gamma);

/* Propagates ranks over disturbance edges: a state joins the ranking when
 * every enabled action that normally avoids ranked states can be spiked into
 * one, at one plus the cheapest such target. Already-ranked states keep the
 * minimum of their rank and the propagated value. */
Ranking disturbance_update(const Ranking& r, const BimodalAbstraction& gamma);

/* Removes (state, action) pairs that touch the ranked set. The literal rule
 * drops a pair when either transition map meets the ranked set; the reference
 * rule only drops pairs whose disturbance successors meet it, which keeps
 * normal-play alternatives alive for the game-based update. */
BimodalAbstraction strategy_pruning(const Ranking& r, const BimodalAbstraction& gamma,
                                    SynthesisMode mode);

struct RiskUpdateResult {
  Ranking ranking;
  /* per ranked level k, the spike-free game for parity plus avoiding every
   * state ranked <= k; the winning controller is the extraction byproduct */
  std::vector<std::pair<std::uint32_t, WinningResult>> level_games;
};

/* Game-based rank completion: for every level k in the image of r, compute
 * the losing region B_k of the spike-free parity game that additionally
 * avoids states ranked <= k. Unranked states falling in some B_k receive the
 * smallest such k. In reference mode prior ranks are final; in literal mode
 * the result is exactly min{k | q in B_k} with min of the empty set
 * undefined. */
RiskUpdateResult risk_update(const Ranking& r, const BimodalAbstraction& gamma, SynthesisMode mode);

struct FiniteResilienceResult {
  Ranking ranking;
  /* reference mode: wave_games[i] is the parity-and-safety game of wave i on
   * the progressively pruned arena; wave 0 is the plain spike-free solve and
   * the last entry is the fixed-point game (the sub-controller for states of
   * unbounded finite resilience) */
  std::vector<WinningResult> wave_games;
  /* literal mode: the level games of the final risk update */
  std::vector<std::pair<std::uint32_t, WinningResult>> level_games;
  unsigned iterations = 0;
};

/* The ranking fixed point: disturbance update, strategy pruning, then the
 * game-based update, repeated until nothing changes. Reference mode assigns
 * each wave's new states the wave index and never revises prior ranks, which
 * makes the result coincide with the exhaustive budget-game semantics;
 * literal mode follows the published recipe verbatim. */
FiniteResilienceResult finite_resilience(const BimodalAbstraction& gamma, SynthesisMode mode);

/* Family of memoryless sub-controllers with a switch-on-spike rule. The
 * selector assigns every state of positive resilience the sub-controller it
 * should restart with after a spike lands there. */
struct ResilientController {
  StateId num_states = 0;
  ActionId num_actions = 0;
  std::vector<std::vector<std::int32_t>> subs;  // action per state, -1 undefined
  std::vector<std::string> sub_names;
  std::int32_t omega_sub = -1;
  std::int32_t omega_plus_sub = -1;
  std::vector<std::int32_t> selector;  // sub index per state, -1 for resilience 0
  std::string mode;
  std::string switching = "spike-reselect-v1";

  std::int32_t action_of(std::int32_t sub, StateId q) const {
    return sub < 0 ? -1 : subs[static_cast<std::size_t>(sub)][q];
  }
};

struct ClassifyResult {
  ResilienceMap map;
  ResilientController controller;
};

/* Total classification: finite ranks from the fixed point, omega+1 on the
 * winning region of the parity game over the union arena, omega elsewhere;
 * stitches the per-wave controllers together. In reference mode a state that
 * is both finitely ranked and union-winning raises InternalError. */
ClassifyResult classify(const BimodalAbstraction& gamma, SynthesisMode mode);

/* Independent oracle: for each spike budget k, solves the parity game on the
 * product of the abstraction with a spike counter that lets the environment
 * take a disturbance edge while the counter is below k. A state's value is
 * one plus the largest budget it survives; states surviving every budget are
 * omega, or omega+1 when they also win the union-arena game. Guarded to
 * small instances. */
ResilienceMap brute_force_resilience(const BimodalAbstraction& gamma, std::uint32_t k_max);

/* histogram of values, sorted ascending */
std::vector<std::pair<ResilienceValue, std::uint64_t>> resilience_histogram(const ResilienceMap& map);

std::uint64_t count_distinct_finite(const ResilienceMap& map);

}  // namespace rescot
