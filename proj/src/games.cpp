#include "rescot/games.hpp"

#include <algorithm>

#include "rescot/errors.hpp"

namespace rescot {

Arena normal_arena(const BimodalAbstraction& gamma) {
  return Arena{gamma.num_states, gamma.num_actions, gamma.normal, gamma.colors};
}

Arena union_arena(const BimodalAbstraction& gamma) {
  const std::size_t pairs = static_cast<std::size_t>(gamma.num_states) * gamma.num_actions;
  std::vector<std::vector<StateId>> rows(pairs);
  for (StateId q = 0; q < gamma.num_states; ++q) {
    for (ActionId u = 0; u < gamma.num_actions; ++u) {
      const std::size_t p = static_cast<std::size_t>(q) * gamma.num_actions + u;
      const auto nor = gamma.normal.successors(q, u);
      const auto dst = gamma.dist.successors(q, u);
      rows[p].reserve(nor.size() + dst.size());
      std::merge(nor.begin(), nor.end(), dst.begin(), dst.end(), std::back_inserter(rows[p]));
    }
  }
  return Arena{gamma.num_states, gamma.num_actions,
               SuccessorMap::from_rows(gamma.num_states, gamma.num_actions, std::move(rows)),
               gamma.colors};
}

WinningResult solve_safety(const Arena& arena, const std::vector<std::uint8_t>& unsafe) {
  const StateId S = arena.num_states;
  const ActionId A = arena.num_actions;
  if (unsafe.size() != S) throw InternalError("solve_safety: unsafe mask size mismatch");

  /* bad_count[q*A+u] = number of successors currently outside the candidate
   * winning set; live_actions[q] = number of enabled actions with bad_count 0 */
  std::vector<std::uint32_t> bad_count(static_cast<std::size_t>(S) * A, 0);
  std::vector<std::uint32_t> live_actions(S, 0);
  std::vector<std::uint8_t> in(S);

  for (StateId q = 0; q < S; ++q) in[q] = unsafe[q] ? 0 : 1;

  /* predecessor lists over (q, u) pair indices */
  std::vector<std::uint64_t> pred_off(S + 1, 0);
  std::vector<std::uint64_t> pred;  // pair index
  {
    for (StateId q = 0; q < S; ++q)
      for (ActionId u = 0; u < A; ++u)
        for (StateId t : arena.succ.successors(q, u)) pred_off[t + 1]++;
    for (StateId q = 0; q < S; ++q) pred_off[q + 1] += pred_off[q];
    pred.resize(pred_off[S]);
    std::vector<std::uint64_t> fill(pred_off.begin(), pred_off.end() - 1);
    for (StateId q = 0; q < S; ++q)
      for (ActionId u = 0; u < A; ++u)
        for (StateId t : arena.succ.successors(q, u))
          pred[fill[t]++] = static_cast<std::uint64_t>(q) * A + u;
  }

  /* initial counts against the frozen start set (unsafe states are already
   * outside and therefore already counted) */
  for (StateId q = 0; q < S; ++q) {
    for (ActionId u = 0; u < A; ++u) {
      const auto succ = arena.succ.successors(q, u);
      if (succ.empty()) continue;
      std::uint32_t bad = 0;
      for (StateId t : succ)
        if (!in[t]) ++bad;
      bad_count[static_cast<std::size_t>(q) * A + u] = bad;
      if (bad == 0) ++live_actions[q];
    }
  }

  std::vector<StateId> queue;
  for (StateId q = 0; q < S; ++q) {
    if (in[q] && live_actions[q] == 0) {
      in[q] = 0;
      queue.push_back(q);
    }
  }

  while (!queue.empty()) {
    const StateId t = queue.back();
    queue.pop_back();
    for (std::uint64_t k = pred_off[t]; k < pred_off[t + 1]; ++k) {
      const std::uint64_t p = pred[k];
      const auto q = static_cast<StateId>(p / A);
      if (bad_count[p]++ == 0) {
        if (--live_actions[q] == 0 && in[q]) {
          in[q] = 0;
          queue.push_back(q);
        }
      }
    }
  }

  WinningResult result;
  result.winning = in;
  result.controller.assign(S, -1);
  for (StateId q = 0; q < S; ++q) {
    if (!in[q]) continue;
    for (ActionId u = 0; u < A; ++u) {
      const std::size_t p = static_cast<std::size_t>(q) * A + u;
      if (!arena.succ.successors(q, u).empty() && bad_count[p] == 0) {
        result.controller[q] = static_cast<std::int32_t>(u);
        break;
      }
    }
  }
  return result;
}

namespace {

/* Explicit two-player parity game over a bipartite encoding of the arena:
 * state vertices (owned by the controller, player 0) choose an enabled
 * action vertex; action vertices (owned by the environment, player 1) choose
 * a successor state vertex. Action vertices carry color 0, which never
 * changes the maximum color seen infinitely often because state vertices are
 * visited infinitely often as well. States without enabled actions point to
 * an absorbing odd sink: being stuck loses. */
struct ParityGame {
  std::vector<std::uint8_t> owner;
  std::vector<int> color;
  std::vector<std::uint64_t> succ_off, pred_off;
  std::vector<std::uint32_t> succ, pred;
  std::uint32_t num_vertices = 0;

  /* arena bookkeeping for back-projection */
  std::uint32_t num_states = 0;
  std::vector<std::uint32_t> action_vertex_state;   // owning state of an action vertex
  std::vector<std::uint32_t> action_vertex_action;  // arena action index

  void build_edges(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    succ_off.assign(num_vertices + 1, 0);
    pred_off.assign(num_vertices + 1, 0);
    for (const auto& [from, to] : edges) {
      succ_off[from + 1]++;
      pred_off[to + 1]++;
    }
    for (std::uint32_t v = 0; v < num_vertices; ++v) {
      succ_off[v + 1] += succ_off[v];
      pred_off[v + 1] += pred_off[v];
    }
    succ.resize(edges.size());
    pred.resize(edges.size());
    std::vector<std::uint64_t> sf(succ_off.begin(), succ_off.end() - 1);
    std::vector<std::uint64_t> pf(pred_off.begin(), pred_off.end() - 1);
    for (const auto& [from, to] : edges) {
      succ[sf[from]++] = to;
      pred[pf[to]++] = from;
    }
  }

  std::span<const std::uint32_t> successors(std::uint32_t v) const {
    return {succ.data() + succ_off[v], succ.data() + succ_off[v + 1]};
  }
  std::span<const std::uint32_t> predecessors(std::uint32_t v) const {
    return {pred.data() + pred_off[v], pred.data() + pred_off[v + 1]};
  }
};

ParityGame build_parity_game(const Arena& arena) {
  ParityGame g;
  g.num_states = arena.num_states;

  const StateId S = arena.num_states;
  const ActionId A = arena.num_actions;

  /* vertex layout: states first, then one vertex per enabled (q, u), then a
   * single odd sink if some state is dead */
  std::vector<std::uint32_t> pair_vertex(static_cast<std::size_t>(S) * A, UINT32_MAX);
  std::uint32_t next = S;
  for (StateId q = 0; q < S; ++q)
    for (ActionId u = 0; u < A; ++u)
      if (!arena.succ.successors(q, u).empty()) {
        pair_vertex[static_cast<std::size_t>(q) * A + u] = next++;
        g.action_vertex_state.push_back(q);
        g.action_vertex_action.push_back(u);
      }

  bool any_dead = false;
  for (StateId q = 0; q < S; ++q) {
    bool has = false;
    for (ActionId u = 0; u < A && !has; ++u)
      has = !arena.succ.successors(q, u).empty();
    if (!has) any_dead = true;
  }
  const std::uint32_t sink = next;
  if (any_dead) ++next;

  g.num_vertices = next;
  g.owner.assign(g.num_vertices, 1);
  g.color.assign(g.num_vertices, 0);
  for (StateId q = 0; q < S; ++q) {
    g.owner[q] = 0;
    g.color[q] = arena.colors[q];
  }
  if (any_dead) {
    g.owner[sink] = 0;
    g.color[sink] = 1;
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(arena.succ.num_edges() + g.action_vertex_state.size() + S);
  for (StateId q = 0; q < S; ++q) {
    bool has = false;
    for (ActionId u = 0; u < A; ++u) {
      const std::uint32_t av = pair_vertex[static_cast<std::size_t>(q) * A + u];
      if (av == UINT32_MAX) continue;
      has = true;
      edges.emplace_back(q, av);
      for (StateId t : arena.succ.successors(q, u)) edges.emplace_back(av, t);
    }
    if (!has) edges.emplace_back(q, sink);
  }
  if (any_dead) edges.emplace_back(sink, sink);

  g.build_edges(edges);
  return g;
}

/* attractor of `target` for player side within `alive`; removes nothing, only
 * reports membership; records side's attractor strategy into `strategy` for
 * vertices newly attracted (not for the targets themselves) */
std::vector<std::uint8_t> attractor(const ParityGame& g, const std::vector<std::uint8_t>& alive,
                                    const std::vector<std::uint8_t>& target, int side,
                                    std::vector<std::int32_t>* strategy) {
  std::vector<std::uint8_t> attr(g.num_vertices, 0);
  std::vector<std::uint32_t> degree(g.num_vertices, 0);
  std::vector<std::uint32_t> queue;

  for (std::uint32_t v = 0; v < g.num_vertices; ++v) {
    if (!alive[v]) continue;
    if (g.owner[v] != side) {
      std::uint32_t d = 0;
      for (std::uint32_t t : g.successors(v))
        if (alive[t]) ++d;
      degree[v] = d;
    }
    if (target[v]) {
      attr[v] = 1;
      queue.push_back(v);
    }
  }

  while (!queue.empty()) {
    const std::uint32_t t = queue.back();
    queue.pop_back();
    for (std::uint32_t p : g.predecessors(t)) {
      if (!alive[p] || attr[p]) continue;
      if (g.owner[p] == side) {
        attr[p] = 1;
        if (strategy) (*strategy)[p] = static_cast<std::int32_t>(t);
        queue.push_back(p);
      } else if (--degree[p] == 0) {
        attr[p] = 1;
        queue.push_back(p);
      }
    }
  }
  return attr;
}

/* Recursive parity solve over the subgame induced by `alive`. Writes the
 * winning masks for both players and the controller strategy (successor
 * vertex choice) for player 0 on its winning set. Every vertex in `alive`
 * must have at least one alive successor (the builder totalizes the game),
 * a property attractor removal preserves. */
void zielonka(const ParityGame& g, std::vector<std::uint8_t> alive, std::vector<std::uint8_t>& win0,
              std::vector<std::uint8_t>& win1, std::vector<std::int32_t>& strategy0) {
  for (;;) {
    int top = -1;
    for (std::uint32_t v = 0; v < g.num_vertices; ++v)
      if (alive[v]) top = std::max(top, g.color[v]);
    if (top < 0) return;  // empty subgame

    const int side = (top % 2 == 0) ? 0 : 1;

    std::vector<std::uint8_t> target(g.num_vertices, 0);
    for (std::uint32_t v = 0; v < g.num_vertices; ++v)
      if (alive[v] && g.color[v] == top) target[v] = 1;

    std::vector<std::int32_t> attr_strategy(g.num_vertices, -1);
    const auto region = attractor(g, alive, target, side, &attr_strategy);

    std::vector<std::uint8_t> rest(g.num_vertices, 0);
    bool rest_nonempty = false;
    for (std::uint32_t v = 0; v < g.num_vertices; ++v) {
      rest[v] = alive[v] && !region[v];
      rest_nonempty |= rest[v] != 0;
    }

    std::vector<std::uint8_t> sub0(g.num_vertices, 0), sub1(g.num_vertices, 0);
    if (rest_nonempty) zielonka(g, rest, sub0, sub1, strategy0);

    const auto& opp = (side == 0) ? sub1 : sub0;
    bool opp_nonempty = false;
    for (std::uint32_t v = 0; v < g.num_vertices; ++v) opp_nonempty |= opp[v] != 0;

    if (!opp_nonempty) {
      /* `side` wins the whole current subgame */
      auto& ws = (side == 0) ? win0 : win1;
      for (std::uint32_t v = 0; v < g.num_vertices; ++v)
        if (alive[v]) ws[v] = 1;
      if (side == 0) {
        for (std::uint32_t v = 0; v < g.num_vertices; ++v) {
          if (!alive[v] || g.owner[v] != 0) continue;
          if (target[v]) {
            for (std::uint32_t t : g.successors(v))
              if (alive[t]) {
                strategy0[v] = static_cast<std::int32_t>(t);
                break;
              }
          } else if (region[v] && attr_strategy[v] >= 0) {
            strategy0[v] = attr_strategy[v];
          }
          /* vertices of the inner winning set keep the strategy written by
           * the recursive call */
        }
      }
      return;
    }

    /* the opponent keeps its sub-region plus its attractor; settle it and
     * iterate on the remainder */
    std::vector<std::int32_t> opp_strategy(g.num_vertices, -1);
    const auto settled = attractor(g, alive, opp, 1 - side, &opp_strategy);
    auto& wopp = (side == 0) ? win1 : win0;
    for (std::uint32_t v = 0; v < g.num_vertices; ++v)
      if (settled[v]) wopp[v] = 1;
    if (side == 1) {
      /* player 0 is the opponent here: attractor strategy on the extension,
       * recursive strategy inside sub0 (already written) */
      for (std::uint32_t v = 0; v < g.num_vertices; ++v)
        if (settled[v] && !opp[v] && g.owner[v] == 0 && opp_strategy[v] >= 0)
          strategy0[v] = opp_strategy[v];
    }
    for (std::uint32_t v = 0; v < g.num_vertices; ++v)
      if (settled[v]) alive[v] = 0;
  }
}

}  // namespace

WinningResult solve_parity(const Arena& arena) {
  const ParityGame g = build_parity_game(arena);

  std::vector<std::uint8_t> alive(g.num_vertices, 1);
  std::vector<std::uint8_t> win0(g.num_vertices, 0), win1(g.num_vertices, 0);
  std::vector<std::int32_t> strategy0(g.num_vertices, -1);
  zielonka(g, std::move(alive), win0, win1, strategy0);

  WinningResult result;
  result.winning.assign(arena.num_states, 0);
  result.controller.assign(arena.num_states, -1);
  for (StateId q = 0; q < arena.num_states; ++q) {
    if (!win0[q]) continue;
    result.winning[q] = 1;
    const std::int32_t choice = strategy0[q];
    if (choice < 0 || static_cast<std::uint32_t>(choice) < g.num_states)
      throw InternalError("solve_parity: missing strategy on a winning state");
    const std::uint32_t av = static_cast<std::uint32_t>(choice) - g.num_states;
    if (av >= g.action_vertex_action.size())
      throw InternalError("solve_parity: strategy points at the sink");
    result.controller[q] = static_cast<std::int32_t>(g.action_vertex_action[av]);
  }
  return result;
}

WinningResult solve_parity_and_safety(const Arena& arena, const std::vector<std::uint8_t>& unsafe) {
  const auto safe = solve_safety(arena, unsafe);

  /* keep only actions that provably stay inside the safety winning region */
  const std::size_t pairs = static_cast<std::size_t>(arena.num_states) * arena.num_actions;
  std::vector<std::vector<StateId>> rows(pairs);
  for (StateId q = 0; q < arena.num_states; ++q) {
    if (!safe.is_winning(q)) continue;
    for (ActionId u = 0; u < arena.num_actions; ++u) {
      const auto succ = arena.succ.successors(q, u);
      if (succ.empty()) continue;
      bool closed = true;
      for (StateId t : succ)
        if (!safe.is_winning(t)) {
          closed = false;
          break;
        }
      if (closed)
        rows[static_cast<std::size_t>(q) * arena.num_actions + u].assign(succ.begin(), succ.end());
    }
  }
  Arena restricted{arena.num_states, arena.num_actions,
                   SuccessorMap::from_rows(arena.num_states, arena.num_actions, std::move(rows)),
                   arena.colors};
  return solve_parity(restricted);
}

}  // namespace rescot
