#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "rescot/grid.hpp"

namespace rescot {

/* Sparse set-valued transition map (q, u) -> sorted set of successor ids,
 * stored CSR-style over the flattened (q, u) pair index. Immutable after
 * construction and safe to share across threads. */
class SuccessorMap {
 public:
  SuccessorMap() = default;

  static SuccessorMap from_rows(StateId num_states, ActionId num_actions,
                                std::vector<std::vector<StateId>> rows);

  StateId num_states() const { return num_states_; }
  ActionId num_actions() const { return num_actions_; }

  std::span<const StateId> successors(StateId q, ActionId u) const {
    const std::size_t p = static_cast<std::size_t>(q) * num_actions_ + u;
    return {targets_.data() + offsets_[p], targets_.data() + offsets_[p + 1]};
  }

  bool empty_at(StateId q, ActionId u) const { return successors(q, u).empty(); }

  bool contains(StateId q, ActionId u, StateId target) const {
    const auto s = successors(q, u);
    return std::binary_search(s.begin(), s.end(), target);
  }

  std::uint64_t num_edges() const { return targets_.size(); }

  bool operator==(const SuccessorMap&) const = default;

 private:
  StateId num_states_ = 0;
  ActionId num_actions_ = 0;
  std::vector<std::uint64_t> offsets_;  // size num_states * num_actions + 1
  std::vector<StateId> targets_;        // sorted within each (q, u) slice
};

}  // namespace rescot
