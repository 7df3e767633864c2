#include "rescot/resilience.hpp"

#include <algorithm>
#include <map>

#include "rescot/errors.hpp"

namespace rescot {

std::uint32_t ResilienceValue::finite_value() const {
  if (!is_finite()) throw InternalError("ResilienceValue: not finite");
  return raw_;
}

std::string ResilienceValue::to_string() const {
  if (is_omega()) return "omega";
  if (is_omega_plus_one()) return "omega+1";
  return std::to_string(raw_);
}

ResilienceValue ResilienceValue::parse(const std::string& text) {
  if (text == "omega") return omega();
  if (text == "omega+1") return omega_plus_one();
  try {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(text, &pos);
    if (pos != text.size() || v >= kOmegaRaw) throw std::invalid_argument(text);
    return finite(static_cast<std::uint32_t>(v));
  } catch (const std::exception&) {
    throw ReferenceError("unparseable resilience value: '" + text + "'");
  }
}

std::vector<std::uint32_t> ranking_values(const Ranking& r) {
  std::vector<std::uint32_t> values;
  for (std::uint32_t v : r)
    if (v != kUnranked) values.push_back(v);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::string to_string(SynthesisMode mode) {
  return mode == SynthesisMode::kReference ? "reference" : "paper-literal";
}

SynthesisMode parse_mode(const std::string& text) {
  if (text == "reference") return SynthesisMode::kReference;
  if (text == "paper-literal") return SynthesisMode::kPaperLiteral;
  throw ConfigError("unknown mode '" + text + "' (expected reference or paper-literal)");
}

Ranking initial_ranking(const BimodalAbstraction& gamma) {
  const auto result = solve_parity(normal_arena(gamma));
  Ranking r(gamma.num_states, kUnranked);
  for (StateId q = 0; q < gamma.num_states; ++q)
    if (!result.is_winning(q)) r[q] = 0;
  return r;
}

namespace {

bool meets_ranked(std::span<const StateId> set, const Ranking& r) {
  for (StateId t : set)
    if (ranked(r, t)) return true;
  return false;
}

}  // namespace

Ranking disturbance_update(const Ranking& r, const BimodalAbstraction& gamma) {
  Ranking out = r;
  for (StateId q = 0; q < gamma.num_states; ++q) {
    bool all_covered = true;
    bool any_witness = false;
    std::uint32_t best_target = kUnranked;
    for (ActionId u = 0; u < gamma.num_actions && all_covered; ++u) {
      const auto nor = gamma.normal.successors(q, u);
      if (nor.empty() || meets_ranked(nor, r)) continue;
      /* an action whose normal successors avoid the ranked set: a spike must
       * be able to push it in */
      bool found = false;
      for (StateId t : gamma.dist.successors(q, u)) {
        if (!ranked(r, t)) continue;
        found = true;
        any_witness = true;
        best_target = std::min(best_target, r[t]);
      }
      if (!found) all_covered = false;
    }
    if (!all_covered || !any_witness) continue;
    const std::uint32_t candidate = best_target + 1;
    out[q] = ranked(r, q) ? std::min(r[q], candidate) : candidate;
  }
  return out;
}

BimodalAbstraction strategy_pruning(const Ranking& r, const BimodalAbstraction& gamma,
                                    SynthesisMode mode) {
  const std::size_t pairs = static_cast<std::size_t>(gamma.num_states) * gamma.num_actions;
  std::vector<std::vector<StateId>> nor_rows(pairs), dist_rows(pairs);
  for (StateId q = 0; q < gamma.num_states; ++q) {
    for (ActionId u = 0; u < gamma.num_actions; ++u) {
      const auto nor = gamma.normal.successors(q, u);
      const auto dst = gamma.dist.successors(q, u);
      const bool dist_hit = meets_ranked(dst, r);
      const bool hit = mode == SynthesisMode::kPaperLiteral
                           ? (dist_hit || meets_ranked(nor, r))
                           : dist_hit;
      if (hit) continue;  // both maps dropped at this pair
      const std::size_t p = static_cast<std::size_t>(q) * gamma.num_actions + u;
      nor_rows[p].assign(nor.begin(), nor.end());
      dist_rows[p].assign(dst.begin(), dst.end());
    }
  }
  BimodalAbstraction out = gamma;
  out.normal = SuccessorMap::from_rows(gamma.num_states, gamma.num_actions, std::move(nor_rows));
  out.dist = SuccessorMap::from_rows(gamma.num_states, gamma.num_actions, std::move(dist_rows));
  return out;
}

RiskUpdateResult risk_update(const Ranking& r, const BimodalAbstraction& gamma,
                             SynthesisMode mode) {
  RiskUpdateResult out;
  const auto levels = ranking_values(r);
  const Arena arena = normal_arena(gamma);

  Ranking literal(gamma.num_states, kUnranked);
  Ranking reference = r;

  for (const std::uint32_t k : levels) {
    std::vector<std::uint8_t> unsafe(gamma.num_states, 0);
    for (StateId q = 0; q < gamma.num_states; ++q)
      if (ranked(r, q) && r[q] <= k) unsafe[q] = 1;
    WinningResult res = solve_parity_and_safety(arena, unsafe);
    for (StateId q = 0; q < gamma.num_states; ++q) {
      if (res.is_winning(q)) continue;  // q not in B_k
      if (literal[q] == kUnranked) literal[q] = k;
      if (!ranked(reference, q)) reference[q] = k;
    }
    out.level_games.emplace_back(k, std::move(res));
  }

  out.ranking = mode == SynthesisMode::kPaperLiteral ? std::move(literal) : std::move(reference);
  return out;
}

FiniteResilienceResult finite_resilience(const BimodalAbstraction& gamma, SynthesisMode mode) {
  FiniteResilienceResult out;

  if (mode == SynthesisMode::kReference) {
    /* wave 0: spike-free parity; rank 0 on its losing region */
    WinningResult base = solve_parity(normal_arena(gamma));
    Ranking r(gamma.num_states, kUnranked);
    for (StateId q = 0; q < gamma.num_states; ++q)
      if (!base.is_winning(q)) r[q] = 0;
    out.wave_games.push_back(std::move(base));

    BimodalAbstraction current = gamma;  // progressively pruned
    const unsigned guard = gamma.num_states + 2;
    std::uint32_t wave = 0;
    for (;;) {
      if (++out.iterations > guard)
        throw InternalError("finite_resilience: fixed point exceeded the iteration guard");
      ++wave;

      const Ranking pre = r;
      Ranking rp = disturbance_update(r, current);
      current = strategy_pruning(r, current, SynthesisMode::kReference);

      std::vector<std::uint8_t> unsafe(gamma.num_states, 0);
      for (StateId q = 0; q < gamma.num_states; ++q)
        if (ranked(rp, q)) unsafe[q] = 1;
      WinningResult res = solve_parity_and_safety(normal_arena(current), unsafe);

      for (StateId q = 0; q < gamma.num_states; ++q)
        if (!ranked(rp, q) && !res.is_winning(q)) rp[q] = wave;

      out.wave_games.push_back(std::move(res));
      const bool changed = rp != pre;
      r = std::move(rp);
      if (!changed) break;  // the final game doubles as the omega-region game
    }
    out.ranking = std::move(r);
    return out;
  }

  /* literal recipe: disturbance update and per-level risk update on the
   * aggressively pruned arena, iterated to a fixed point of the ranking */
  Ranking r = initial_ranking(gamma);
  BimodalAbstraction current = gamma;
  const std::uint64_t guard =
      static_cast<std::uint64_t>(gamma.num_states) * (gamma.num_states + 2) + 4;
  for (;;) {
    if (++out.iterations > guard)
      throw InternalError("finite_resilience: literal recipe exceeded the iteration guard");
    const Ranking rp = disturbance_update(r, current);
    current = strategy_pruning(r, current, SynthesisMode::kPaperLiteral);
    RiskUpdateResult ru = risk_update(rp, current, SynthesisMode::kPaperLiteral);
    if (ru.ranking == r) {
      out.level_games = std::move(ru.level_games);
      break;
    }
    r = std::move(ru.ranking);
  }
  out.ranking = std::move(r);
  return out;
}

namespace {

std::vector<std::int32_t> restrict_controller(const WinningResult& result) {
  return result.controller;
}

}  // namespace

ClassifyResult classify(const BimodalAbstraction& gamma, SynthesisMode mode) {
  FiniteResilienceResult fr = finite_resilience(gamma, mode);
  const WinningResult uni = solve_parity(union_arena(gamma));

  ClassifyResult out;
  out.map.assign(gamma.num_states, ResilienceValue::finite(0));
  for (StateId q = 0; q < gamma.num_states; ++q) {
    if (ranked(fr.ranking, q)) {
      if (uni.is_winning(q) && mode == SynthesisMode::kReference)
        throw InternalError("classify: state " + std::to_string(q) +
                            " is finitely ranked yet wins with unlimited disturbances");
      out.map[q] = ResilienceValue::finite(fr.ranking[q]);
    } else if (uni.is_winning(q)) {
      out.map[q] = ResilienceValue::omega_plus_one();
    } else {
      out.map[q] = ResilienceValue::omega();
    }
  }

  ResilientController& rc = out.controller;
  rc.num_states = gamma.num_states;
  rc.num_actions = gamma.num_actions;
  rc.mode = to_string(mode);
  rc.selector.assign(gamma.num_states, -1);

  if (mode == SynthesisMode::kReference) {
    for (std::size_t i = 0; i < fr.wave_games.size(); ++i) {
      rc.subs.push_back(restrict_controller(fr.wave_games[i]));
      rc.sub_names.push_back("level" + std::to_string(i));
    }
    rc.omega_sub = static_cast<std::int32_t>(fr.wave_games.size()) - 1;
  } else {
    /* literal extraction: one sub-controller per final level game, plus a
     * spike-free game avoiding the whole ranked set for the omega class */
    std::map<std::uint32_t, std::size_t> level_index;
    for (const auto& [level, game] : fr.level_games) {
      level_index[level] = rc.subs.size();
      rc.subs.push_back(restrict_controller(game));
      rc.sub_names.push_back("level" + std::to_string(level));
    }
    std::vector<std::uint8_t> unsafe(gamma.num_states, 0);
    for (StateId q = 0; q < gamma.num_states; ++q)
      if (ranked(fr.ranking, q)) unsafe[q] = 1;
    rc.subs.push_back(restrict_controller(solve_parity_and_safety(normal_arena(gamma), unsafe)));
    rc.sub_names.push_back("omega");
    rc.omega_sub = static_cast<std::int32_t>(rc.subs.size()) - 1;
  }

  rc.subs.push_back(restrict_controller(uni));
  rc.sub_names.push_back("omega+1");
  rc.omega_plus_sub = static_cast<std::int32_t>(rc.subs.size()) - 1;

  for (StateId q = 0; q < gamma.num_states; ++q) {
    const ResilienceValue v = out.map[q];
    if (v.is_omega_plus_one()) {
      rc.selector[q] = rc.omega_plus_sub;
    } else if (v.is_omega()) {
      rc.selector[q] = rc.omega_sub;
    } else if (v.finite_value() >= 1) {
      if (mode == SynthesisMode::kReference) {
        rc.selector[q] = static_cast<std::int32_t>(v.finite_value()) - 1;
      } else {
        /* largest level strictly below the rank */
        std::int32_t chosen = -1;
        for (std::size_t i = 0; i < fr.level_games.size(); ++i)
          if (fr.level_games[i].first < v.finite_value()) chosen = static_cast<std::int32_t>(i);
        rc.selector[q] = chosen;
      }
    }
    if (rc.selector[q] >= 0 && rc.action_of(rc.selector[q], q) < 0 &&
        mode == SynthesisMode::kReference)
      throw InternalError("classify: selected sub-controller undefined at state " +
                          std::to_string(q));
  }
  return out;
}

ResilienceMap brute_force_resilience(const BimodalAbstraction& gamma, std::uint32_t k_max) {
  if (gamma.num_states > 16)
    throw InternalError("brute_force_resilience: size guard exceeded (at most 16 states)");

  const StateId S = gamma.num_states;
  const ActionId A = gamma.num_actions;

  std::vector<std::int64_t> last_win(S, -1);
  std::vector<std::uint8_t> prev_win, final_win(S, 0);

  for (std::uint32_t k = 0; k <= k_max; ++k) {
    const StateId PS = S * (k + 1);
    std::vector<std::vector<StateId>> rows(static_cast<std::size_t>(PS) * A);
    std::vector<int> colors(PS);
    for (StateId q = 0; q < S; ++q) {
      for (std::uint32_t j = 0; j <= k; ++j) {
        const StateId pq = q * (k + 1) + j;
        colors[pq] = gamma.colors[q];
        for (ActionId u = 0; u < A; ++u) {
          const auto nor = gamma.normal.successors(q, u);
          if (nor.empty()) continue;
          auto& row = rows[static_cast<std::size_t>(pq) * A + u];
          for (StateId t : nor) row.push_back(t * (k + 1) + j);
          if (j < k)
            for (StateId t : gamma.dist.successors(q, u)) row.push_back(t * (k + 1) + j + 1);
        }
      }
    }
    Arena product{PS, A, SuccessorMap::from_rows(PS, A, std::move(rows)), std::move(colors)};
    const WinningResult res = solve_parity(product);

    std::vector<std::uint8_t> win(S, 0);
    for (StateId q = 0; q < S; ++q) {
      win[q] = res.is_winning(q * (k + 1));
      if (win[q]) last_win[q] = k;
    }
    final_win = win;
    if (k > 0 && win == prev_win) break;  // budgets beyond this change nothing
    prev_win = std::move(win);
  }

  const WinningResult uni = solve_parity(union_arena(gamma));
  ResilienceMap map(S, ResilienceValue::finite(0));
  for (StateId q = 0; q < S; ++q) {
    if (last_win[q] < 0) {
      map[q] = ResilienceValue::finite(0);
    } else if (final_win[q]) {
      map[q] = uni.is_winning(q) ? ResilienceValue::omega_plus_one() : ResilienceValue::omega();
    } else {
      map[q] = ResilienceValue::finite(static_cast<std::uint32_t>(last_win[q]) + 1);
    }
  }
  return map;
}

std::vector<std::pair<ResilienceValue, std::uint64_t>> resilience_histogram(const ResilienceMap& map) {
  std::map<ResilienceValue, std::uint64_t> counts;
  for (const auto& v : map) counts[v]++;
  return {counts.begin(), counts.end()};
}

std::uint64_t count_distinct_finite(const ResilienceMap& map) {
  std::vector<std::uint32_t> vals;
  for (const auto& v : map)
    if (v.is_finite()) vals.push_back(v.finite_value());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals.size();
}

}  // namespace rescot
