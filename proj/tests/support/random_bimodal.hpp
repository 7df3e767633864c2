#pragma once

/* seeded random bimodal instances for property tests */

#include <random>

#include "rescot/abstraction.hpp"

namespace rescot::testsupport {

struct RandomSpec {
  StateId min_states = 2;
  StateId max_states = 10;
  ActionId max_actions = 3;
  int max_color = 3;
  double p_enabled = 0.85;
  double p_edge = 0.35;
  double p_dist = 0.22;
};

inline BimodalAbstraction random_bimodal(std::uint64_t seed, const RandomSpec& spec = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<StateId> states_dist(spec.min_states, spec.max_states);
  std::uniform_int_distribution<ActionId> actions_dist(1, spec.max_actions);
  std::uniform_int_distribution<int> color_dist(0, spec.max_color);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  const StateId S = states_dist(rng);
  const ActionId A = actions_dist(rng);

  std::vector<int> colors(S);
  for (auto& c : colors) c = color_dist(rng);

  std::vector<std::vector<StateId>> nor(static_cast<std::size_t>(S) * A);
  std::vector<std::vector<StateId>> dst(static_cast<std::size_t>(S) * A);
  std::uniform_int_distribution<StateId> pick(0, S - 1);

  for (StateId q = 0; q < S; ++q) {
    for (ActionId u = 0; u < A; ++u) {
      const std::size_t p = static_cast<std::size_t>(q) * A + u;
      if (coin(rng) > spec.p_enabled) continue;
      for (StateId t = 0; t < S; ++t)
        if (coin(rng) < spec.p_edge) nor[p].push_back(t);
      if (nor[p].empty()) nor[p].push_back(pick(rng));
      for (StateId t = 0; t < S; ++t) {
        if (coin(rng) >= spec.p_dist) continue;
        bool in_normal = false;
        for (StateId n : nor[p]) in_normal |= n == t;
        if (!in_normal) dst[p].push_back(t);
      }
    }
  }
  return make_bimodal(S, A, std::move(nor), std::move(dst), std::move(colors));
}

}  // namespace rescot::testsupport
