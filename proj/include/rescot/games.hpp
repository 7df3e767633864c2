#pragma once

#include <cstdint>
#include <vector>

#include "rescot/abstraction.hpp"
#include "rescot/transition_map.hpp"

namespace rescot {

/* Game arena: the controller picks an enabled action, the environment picks
 * any successor. An action is enabled iff its successor set is non-empty;
 * states without enabled actions are losing for the controller. */
struct Arena {
  StateId num_states = 0;
  ActionId num_actions = 0;
  SuccessorMap succ;
  std::vector<int> colors;
};

Arena normal_arena(const BimodalAbstraction& gamma);

/* arena over the argument-wise union of the normal and disturbance maps:
 * the game in which large disturbances are always available */
Arena union_arena(const BimodalAbstraction& gamma);

struct WinningResult {
  std::vector<std::uint8_t> winning;   // per state
  std::vector<std::int32_t> controller;  // enabled action per winning state, -1 elsewhere

  bool is_winning(StateId q) const { return winning[q] != 0; }

  std::vector<StateId> winning_states() const {
    std::vector<StateId> out;
    for (StateId q = 0; q < winning.size(); ++q)
      if (winning[q]) out.push_back(q);
    return out;
  }

  std::vector<std::uint8_t> losing_mask() const {
    std::vector<std::uint8_t> out(winning.size());
    for (std::size_t q = 0; q < winning.size(); ++q) out[q] = winning[q] ? 0 : 1;
    return out;
  }
};

/* Safety game: greatest fixed point of the controllable predecessor. A state
 * wins iff it is safe and some action keeps all successors winning. The
 * returned controller picks the lowest-index such action. */
WinningResult solve_safety(const Arena& arena, const std::vector<std::uint8_t>& unsafe);

/* Parity game (max color seen infinitely often must be even) solved by the
 * recursive attractor decomposition, with the environment resolving successor
 * nondeterminism adversarially. Returns a uniform memoryless controller on
 * the winning region. */
WinningResult solve_parity(const Arena& arena);

/* Conjunction of the two objectives: restrict the arena to the safety winning
 * region (dropping actions that may leave it), then solve the parity game on
 * the restriction. */
WinningResult solve_parity_and_safety(const Arena& arena, const std::vector<std::uint8_t>& unsafe);

}  // namespace rescot
