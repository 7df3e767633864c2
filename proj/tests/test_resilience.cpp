#include <catch2/catch_amalgamated.hpp>

#include "rescot/resilience.hpp"
#include "rescot/scenario.hpp"
#include "support/fixtures.hpp"
#include "support/random_bimodal.hpp"

using namespace rescot;
using namespace rescot::testsupport;

namespace {

const ResilienceValue kFin0 = ResilienceValue::finite(0);
const ResilienceValue kFin1 = ResilienceValue::finite(1);
const ResilienceValue kFin2 = ResilienceValue::finite(2);

}  // namespace

TEST_CASE("resilience values are totally ordered") {
  CHECK(kFin0 < kFin1);
  CHECK(kFin1 < ResilienceValue::omega());
  CHECK(ResilienceValue::omega() < ResilienceValue::omega_plus_one());
  CHECK(ResilienceValue::parse("omega") == ResilienceValue::omega());
  CHECK(ResilienceValue::parse("omega+1") == ResilienceValue::omega_plus_one());
  CHECK(ResilienceValue::parse("3") == ResilienceValue::finite(3));
  CHECK(ResilienceValue::finite(7).to_string() == "7");
}

TEST_CASE("initial ranking: losing region of the spike-free game") {
  const auto g1 = make_g1();
  const auto r = initial_ranking(g1);
  CHECK(r == Ranking{kUnranked, kUnranked, 0});

  const auto g2 = make_g2();
  CHECK(initial_ranking(g2) == Ranking{kUnranked, kUnranked});

  /* all states on odd self-loops: everything gets rank 0 */
  const auto hopeless = make_bimodal(2, 1, {{0}, {1}}, {{}, {}}, {1, 1});
  CHECK(initial_ranking(hopeless) == Ranking{0, 0});
}

TEST_CASE("disturbance update: empty ranking stays empty") {
  const auto g1 = make_g1();
  const Ranking empty(3, kUnranked);
  CHECK(disturbance_update(empty, g1) == empty);
}

TEST_CASE("disturbance update on g1 catches q1 but not q0") {
  const auto g1 = make_g1();
  Ranking r(3, kUnranked);
  r[2] = 0;
  const auto out = disturbance_update(r, g1);
  CHECK(out == Ranking{kUnranked, 1, 0});
}

TEST_CASE("disturbance update keeps an existing rank 0") {
  /* z is ranked 0, its only action normally avoids the ranked set and can be
   * spiked back into it: min with the existing value keeps 0 */
  const auto gamma = make_bimodal(2, 1, {{1}, {1}}, {{0}, {}}, {1, 2});
  Ranking r(2, kUnranked);
  r[0] = 0;
  const auto out = disturbance_update(r, gamma);
  CHECK(out[0] == 0);
}

TEST_CASE("strategy pruning, literal rule on g1") {
  const auto g1 = make_g1();
  Ranking r(3, kUnranked);
  r[2] = 0;
  const auto pruned = strategy_pruning(r, g1, SynthesisMode::kPaperLiteral);
  CHECK(pruned.normal.successors(1, 0).empty());   // (q1, a) dropped: spike touches q2
  CHECK(pruned.dist.successors(1, 0).empty());
  CHECK(pruned.normal.successors(2, 0).empty());   // (q2, a) dropped: normal touches q2
  CHECK_FALSE(pruned.normal.successors(0, 0).empty());  // (q0, a) kept
}

TEST_CASE("strategy pruning, reference rule only drops spike-touching pairs") {
  const auto g1 = make_g1();
  Ranking r(3, kUnranked);
  r[2] = 0;
  const auto pruned = strategy_pruning(r, g1, SynthesisMode::kReference);
  CHECK(pruned.normal.successors(1, 0).empty());        // spike into the ranked set
  CHECK_FALSE(pruned.normal.successors(2, 0).empty());  // normal touch is kept
  CHECK_FALSE(pruned.normal.successors(0, 0).empty());
}

TEST_CASE("strategy pruning: empty ranking changes nothing, full ranking drops all") {
  const auto g1 = make_g1();
  const Ranking empty(3, kUnranked);
  const auto same = strategy_pruning(empty, g1, SynthesisMode::kPaperLiteral);
  CHECK(same.normal == g1.normal);
  CHECK(same.dist == g1.dist);

  const Ranking full{0, 0, 0};
  const auto bare = strategy_pruning(full, g1, SynthesisMode::kPaperLiteral);
  CHECK(bare.normal.num_edges() == 0);
  CHECK(bare.dist.num_edges() == 0);
}

TEST_CASE("risk update: no levels, no change") {
  const auto g1 = make_g1();
  const Ranking empty(3, kUnranked);
  const auto out = risk_update(empty, g1, SynthesisMode::kReference);
  CHECK(out.ranking == empty);
  CHECK(out.level_games.empty());
}

TEST_CASE("risk update on g1 completes the ranking") {
  const auto g1 = make_g1();
  Ranking r(3, kUnranked);
  r[2] = 0;
  r[1] = 1;
  const auto out = risk_update(r, g1, SynthesisMode::kReference);
  CHECK(out.ranking == Ranking{1, 1, 0});
  REQUIRE(out.level_games.size() == 2);
  /* B_0 = {q2}: avoiding q2 while winning is possible from q0 and q1 */
  CHECK(out.level_games[0].second.is_winning(0));
  CHECK(out.level_games[0].second.is_winning(1));
  CHECK_FALSE(out.level_games[0].second.is_winning(2));
  /* B_1 = everything */
  for (StateId q = 0; q < 3; ++q) CHECK_FALSE(out.level_games[1].second.is_winning(q));
}

TEST_CASE("risk update: rank-0 states stay rank 0") {
  const auto g1 = make_g1();
  Ranking r(3, kUnranked);
  r[2] = 0;
  const auto out = risk_update(r, g1, SynthesisMode::kReference);
  CHECK(out.ranking[2] == 0);
}

TEST_CASE("fixed point without disturbance edges is the initial ranking") {
  const auto gamma = random_bimodal(5, {.p_dist = 0.0});
  const auto fr = finite_resilience(gamma, SynthesisMode::kReference);
  CHECK(fr.ranking == initial_ranking(gamma));
}

TEST_CASE("fixed point on g1, reference mode") {
  const auto fr = finite_resilience(make_g1(), SynthesisMode::kReference);
  CHECK(fr.ranking == Ranking{1, 1, 0});
}

TEST_CASE("fixed point on g1, literal mode (pinned divergence)") {
  /* the literal pruning drops q1's only pair, so the first level game already
   * loses everywhere and the replacement semantics drives every state to 0 */
  const auto fr = finite_resilience(make_g1(), SynthesisMode::kPaperLiteral);
  CHECK(fr.ranking == Ranking{0, 0, 0});
}

TEST_CASE("classification of g1") {
  const auto result = classify(make_g1(), SynthesisMode::kReference);
  CHECK(result.map == ResilienceMap{kFin1, kFin1, kFin0});
  /* selector defined exactly on states of positive resilience */
  CHECK(result.controller.selector[0] >= 0);
  CHECK(result.controller.selector[1] >= 0);
  CHECK(result.controller.selector[2] == -1);
}

TEST_CASE("classification of g2: every finite burst is survivable") {
  const auto result = classify(make_g2(), SynthesisMode::kReference);
  CHECK(result.map == ResilienceMap{ResilienceValue::omega(), ResilienceValue::omega()});
}

TEST_CASE("no disturbance edges and all winning: everything is omega+1") {
  const auto gamma = make_bimodal(2, 1, {{0}, {0}}, {{}, {}}, {2, 0});
  const auto result = classify(gamma, SynthesisMode::kReference);
  CHECK(result.map[0] == ResilienceValue::omega_plus_one());
  CHECK(result.map[1] == ResilienceValue::omega_plus_one());
}

TEST_CASE("oracle values on the fixtures") {
  CHECK(brute_force_resilience(make_g1(), 4) == ResilienceMap{kFin1, kFin1, kFin0});
  CHECK(brute_force_resilience(make_g2(), 3) ==
        ResilienceMap{ResilienceValue::omega(), ResilienceValue::omega()});
  const auto gamma = make_bimodal(2, 1, {{0}, {1}}, {{}, {}}, {2, 1});
  CHECK(brute_force_resilience(gamma, 3) ==
        ResilienceMap{ResilienceValue::omega_plus_one(), kFin0});
}

TEST_CASE("two-choice fixture: spike targets are priced per action") {
  const auto gamma = make_two_choice_fixture();
  const auto oracle = brute_force_resilience(gamma, 5);
  REQUIRE(oracle == ResilienceMap{kFin2, kFin1, ResilienceValue::omega_plus_one(), kFin0});
  const auto result = classify(gamma, SynthesisMode::kReference);
  CHECK(result.map == oracle);
}

TEST_CASE("reference classification equals the oracle on random instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto gamma = random_bimodal(seed);
    const auto expected = brute_force_resilience(gamma, gamma.num_states + 1);
    const auto actual = classify(gamma, SynthesisMode::kReference).map;
    INFO("seed " << seed);
    REQUIRE(actual == expected);
  }
}

TEST_CASE("resilience is zero exactly off the spike-free winning region") {
  for (std::uint64_t seed = 500; seed < 540; ++seed) {
    const auto gamma = random_bimodal(seed);
    const auto spike_free = solve_parity(normal_arena(gamma));
    const auto map = classify(gamma, SynthesisMode::kReference).map;
    for (StateId q = 0; q < gamma.num_states; ++q)
      CHECK((map[q] == kFin0) == !spike_free.is_winning(q));
  }
}

TEST_CASE("omega+1 class equals the union-arena winning region") {
  for (std::uint64_t seed = 600; seed < 640; ++seed) {
    const auto gamma = random_bimodal(seed);
    const auto uni = solve_parity(union_arena(gamma));
    const auto map = classify(gamma, SynthesisMode::kReference).map;
    for (StateId q = 0; q < gamma.num_states; ++q)
      CHECK((map[q] == ResilienceValue::omega_plus_one()) == uni.is_winning(q));
  }
}

TEST_CASE("removing a disturbance edge never lowers resilience") {
  unsigned checked = 0;
  for (std::uint64_t seed = 700; checked < 30 && seed < 900; ++seed) {
    const auto gamma = random_bimodal(seed);
    /* find a pair with a disturbance edge and delete one target */
    std::vector<std::vector<StateId>> nor_rows, dist_rows;
    std::ptrdiff_t victim = -1;
    for (StateId q = 0; q < gamma.num_states; ++q)
      for (ActionId u = 0; u < gamma.num_actions; ++u) {
        const auto nor = gamma.normal.successors(q, u);
        const auto dst = gamma.dist.successors(q, u);
        nor_rows.emplace_back(nor.begin(), nor.end());
        dist_rows.emplace_back(dst.begin(), dst.end());
        if (victim < 0 && !dst.empty())
          victim = static_cast<std::ptrdiff_t>(dist_rows.size()) - 1;
      }
    if (victim < 0) continue;
    dist_rows[victim].pop_back();
    const auto weakened = make_bimodal(gamma.num_states, gamma.num_actions, std::move(nor_rows),
                                       std::move(dist_rows), gamma.colors);
    const auto before = brute_force_resilience(gamma, gamma.num_states + 1);
    const auto after = brute_force_resilience(weakened, gamma.num_states + 1);
    for (StateId q = 0; q < gamma.num_states; ++q) CHECK(before[q] <= after[q]);
    ++checked;
  }
  CHECK(checked == 30);
}

TEST_CASE("histogram counts per distinct value") {
  const auto map = ResilienceMap{kFin0, kFin1, kFin1, ResilienceValue::omega()};
  const auto hist = resilience_histogram(map);
  REQUIRE(hist.size() == 3);
  CHECK(hist[0] == std::pair{kFin0, std::uint64_t{1}});
  CHECK(hist[1] == std::pair{kFin1, std::uint64_t{2}});
  CHECK(hist[2] == std::pair{ResilienceValue::omega(), std::uint64_t{1}});
  CHECK(count_distinct_finite(map) == 2);
}
