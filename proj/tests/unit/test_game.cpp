/*
 * Copyright 2026 The atsg authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <catch_amalgamated.hpp>

#include "atsg/game.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace atsg;

namespace {

Game fig1_game() {
  auto alpha = make_alphabet({"q", "r"}, {{"a"}, {"b"}});
  AsyncTransitionSystem sys(alpha, {{"q0", "q1", "q2"}, {"r0", "r1", "r2"}});
  ActionId a = *alpha->action_index("a"), b = *alpha->action_index("b");
  sys.add_transition(a, {0}, {1});
  sys.add_transition(a, {0}, {2});
  sys.add_transition(b, {0}, {1});
  sys.add_transition(b, {0}, {2});
  std::set<GlobalState> unsafe{GlobalState({1, 0}), GlobalState({0, 2}), GlobalState({2, 1})};
  return Game(std::move(sys), GlobalState({0, 0}), WinningCondition::safety(std::move(unsafe)));
}

Play play_from_schedule(const Game& g, const std::vector<std::string>& names,
                        const std::vector<std::size_t>& picks) {
  Play p = Play::empty(g);
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto nexts = step(g, p, *g.system.alphabet().action_index(names[i]));
    REQUIRE(picks[i] < nexts.size());
    p = nexts[picks[i]];
  }
  return p;
}

} // namespace

TEST_CASE("step branches over the system's choices") {
  Game g = fig1_game();
  ActionId a = *g.system.alphabet().action_index("a");
  auto plays = step(g, Play::empty(g), a);
  REQUIRE(plays.size() == 2);
  REQUIRE(plays[0].final_state() == GlobalState({1, 0}));
  REQUIRE(plays[1].final_state() == GlobalState({2, 0}));
  // Stuck state: nothing extends.
  Play stuck = play_from_schedule(g, {"a", "b"}, {0, 0});
  REQUIRE(step(g, stuck, a).empty());
  // Deterministic actions extend uniquely.
  auto alpha1 = make_alphabet({"q"}, {{"a"}});
  AsyncTransitionSystem det(alpha1, {{"s0", "s1"}});
  det.add_transition(0, {0}, {1});
  Game dg(std::move(det), GlobalState({0}), WinningCondition::safety({}));
  REQUIRE(step(dg, Play::empty(dg), 0).size() == 1);
}

TEST_CASE("maximality") {
  Game g = fig1_game();
  REQUIRE(!is_maximal(g, Play::empty(g)));
  REQUIRE(is_maximal(g, play_from_schedule(g, {"a", "b"}, {0, 0})));
  auto alpha1 = make_alphabet({"q"}, {{"a"}});
  AsyncTransitionSystem loop(alpha1, {{"s"}});
  loop.add_transition(0, {0}, {0});
  Game lg(std::move(loop), GlobalState({0}), WinningCondition::safety({}));
  Play p = Play::empty(lg);
  for (int i = 0; i < 5; ++i) {
    REQUIRE(!is_maximal(lg, p));
    p = step(lg, p, 0)[0];
  }
}

TEST_CASE("winner judges every configuration") {
  Game g = fig1_game();
  // One a-step into the unsafe (q1, r0).
  REQUIRE(winner(g, play_from_schedule(g, {"a"}, {0})) == Player::Environment);
  // One b-step to (q0, r1): both configurations safe.
  REQUIRE(winner(g, play_from_schedule(g, {"b"}, {0})) == Player::System);
  // The play ending in the safe (q2, r2) still owns the configuration {b}
  // labeled (q0, r2), which is unsafe; schedule order cannot hide it.
  Play corner = play_from_schedule(g, {"a", "b"}, {1, 1});
  REQUIRE(corner.final_state() == GlobalState({2, 2}));
  REQUIRE(winner(g, corner) == Player::Environment);
  // The safe diagonal play passes through the unsafe {a} configuration.
  Play diag = play_from_schedule(g, {"a", "b"}, {0, 0});
  REQUIRE(diag.final_state() == GlobalState({1, 1}));
  REQUIRE(winner(g, diag) == Player::Environment);
  // The environment wins every maximal play of this game.
  for (const auto& p : all_maximal_plays(g, 2).first)
    REQUIRE(winner(g, p) == Player::Environment);
  // Reachability: the empty play wins when the initial state is the target.
  Game rg(g.system, g.initial, WinningCondition::reachability({g.initial}));
  REQUIRE(winner(rg, Play::empty(rg)) == Player::System);
}

TEST_CASE("maximal-play unfolding on the example") {
  Game g = fig1_game();
  auto [plays, truncated] = all_maximal_plays(g, 2);
  // Oracle first: exhaustive DFS over schedules and choices. Both routes
  // count the four (trace, run) pairs over the trace ab; the one-event
  // plays are not maximal since the other action stays enabled.
  auto [expect, oracle_flag] = oracle::dfs_maximal_plays(g, 2);
  std::set<std::pair<std::vector<ActionId>, std::vector<AState>>> got;
  for (const auto& p : plays) got.insert(p.canonical_key());
  REQUIRE(got == expect);
  REQUIRE(truncated == oracle_flag);
  REQUIRE(plays.size() == 4);
  REQUIRE(!truncated);
  for (const auto& p : plays) {
    REQUIRE(is_maximal(g, p));
    REQUIRE(p.trace().canonical_word() == "a b");
  }

  SECTION("horizon 0 cuts everything") {
    auto [none, cut] = all_maximal_plays(g, 0);
    REQUIRE(none.empty());
    REQUIRE(cut);
  }
  SECTION("horizon 1 keeps nothing but flags the cut") {
    auto [none, cut] = all_maximal_plays(g, 1);
    REQUIRE(none.empty());
    REQUIRE(cut);
  }
}

TEST_CASE("a transition-free system has one empty maximal play") {
  auto alpha = make_alphabet({"q"}, {{"a"}});
  AsyncTransitionSystem sys(alpha, {{"s"}});
  Game g(std::move(sys), GlobalState({0}), WinningCondition::safety({}));
  auto [plays, truncated] = all_maximal_plays(g, 3);
  REQUIRE(plays.size() == 1);
  REQUIRE(plays[0].size() == 0);
  REQUIRE(!truncated);
}

TEST_CASE("complete safety games never end") {
  auto alpha = make_alphabet({"q", "r"}, {{"a"}, {"b"}});
  AsyncTransitionSystem sys(alpha, {{"s"}, {"t"}});
  sys.add_transition(0, {0}, {0});
  sys.add_transition(1, {0}, {0});
  REQUIRE(sys.is_complete());
  Game g(std::move(sys), GlobalState({0, 0}), WinningCondition::safety({}));
  for (int h : {0, 1, 3}) {
    auto [plays, truncated] = all_maximal_plays(g, h);
    REQUIRE(plays.empty());
    REQUIRE(truncated);
  }
}

TEST_CASE("unfolding agrees with the DFS oracle on random games") {
  testgen::Rng rng(4242);
  for (int round = 0; round < 30; ++round) {
    Game g = testgen::random_game(rng, 3, 3);
    auto [plays, truncated] = all_maximal_plays(g, 4, 200000);
    auto [expect, oracle_flag] = oracle::dfs_maximal_plays(g, 4);
    std::set<std::pair<std::vector<ActionId>, std::vector<AState>>> got;
    for (const auto& p : plays) {
      REQUIRE(is_maximal(g, p));
      got.insert(p.canonical_key());
    }
    REQUIRE(got == expect);
    REQUIRE(truncated == oracle_flag);
  }
}

TEST_CASE("strict prefixes of maximal plays are never maximal") {
  // Restricting a maximal play to a smaller configuration re-enables the
  // action of some removed event.
  testgen::Rng rng(86);
  int prefixes = 0;
  for (int round = 0; round < 80; ++round) {
    Game g = testgen::random_finite_game(rng);
    auto [plays, truncated] = all_maximal_plays(g, 8, 200000);
    REQUIRE(!truncated);
    for (const auto& p : plays) {
      for (const auto& c : p.trace().configurations()) {
        if (c.size() == static_cast<std::size_t>(p.size())) continue;
        std::vector<AState> choices;
        for (int id : c.ids()) choices.push_back(p.run().choice(id));
        Play prefix{TraceRun(p.trace().subtrace(c), g.initial, std::move(choices))};
        REQUIRE(!is_maximal(g, prefix));
        ++prefixes;
      }
    }
  }
  REQUIRE(prefixes > 200);
}

TEST_CASE("safety winner is linearization-invariant") {
  // Won iff every linearization's full state sequence stays safe; the
  // configuration sweep and the all-linearizations sweep agree.
  testgen::Rng rng(555);
  int evaluated = 0;
  while (evaluated < 40) {
    Game g = testgen::random_game(rng, 3, 2);
    auto [plays, truncated] = all_maximal_plays(g, 4, 200000);
    (void)truncated;
    for (const auto& p : plays) {
      REQUIRE(winner(g, p) == oracle::winner_by_linearizations(g, p));
      ++evaluated;
    }
  }
}
