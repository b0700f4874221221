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

#ifndef ATSG_GAME_HPP
#define ATSG_GAME_HPP

#include <deque>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "atsg/ats.hpp"

namespace atsg {

enum class Player { System, Environment };

inline const char* to_string(Player p) {
  return p == Player::System ? "System" : "Environment";
}

/**
 * State-based winning condition. Safety is stored through its unsafe set
 * (the complement over the global state space), which is also how game
 * files and the asynchronous-game reduction describe it: a play is won iff
 * no configuration is labeled with an unsafe state. Reachability stores the
 * target set: a play is won iff some configuration's state is in it.
 */
class WinningCondition {
public:
  enum class Kind { Safety, Reachability };

  static WinningCondition safety(std::set<GlobalState> unsafe) {
    WinningCondition c;
    c.kind_ = Kind::Safety;
    c.states_ = std::move(unsafe);
    return c;
  }

  static WinningCondition reachability(std::set<GlobalState> target) {
    WinningCondition c;
    c.kind_ = Kind::Reachability;
    c.states_ = std::move(target);
    return c;
  }

  Kind kind() const { return kind_; }
  bool is_safety() const { return kind_ == Kind::Safety; }

  /// Unsafe states (Safety) or target states (Reachability).
  const std::set<GlobalState>& states() const { return states_; }

  bool safe(const GlobalState& s) const { return kind_ != Kind::Safety || !states_.count(s); }
  bool in_target(const GlobalState& s) const {
    return kind_ == Kind::Reachability && states_.count(s) > 0;
  }

  bool operator==(const WinningCondition& o) const {
    return kind_ == o.kind_ && states_ == o.states_;
  }
  bool operator!=(const WinningCondition& o) const { return !(*this == o); }

private:
  Kind kind_ = Kind::Safety;
  std::set<GlobalState> states_;
};

/// An ATS game: system, initial global state, winning condition.
struct Game {
  AsyncTransitionSystem system;
  GlobalState initial;
  WinningCondition condition;

  Game(AsyncTransitionSystem sys, GlobalState init, WinningCondition cond)
      : system(std::move(sys)), initial(std::move(init)), condition(std::move(cond)) {
    if (!system.valid_state(initial))
      throw Error("game: initial state is not a global state of the system");
    for (const auto& s : condition.states())
      if (!system.valid_state(s)) throw Error("game: condition mentions an invalid global state");
  }

  bool operator==(const Game& o) const {
    return system == o.system && initial == o.initial && condition == o.condition;
  }
  bool operator!=(const Game& o) const { return !(*this == o); }
};

/**
 * A play: one trace run of the game's system from its initial state. The
 * environment schedules enabled actions, the system resolves the
 * non-deterministic choice; a play records both.
 */
class Play {
public:
  explicit Play(TraceRun run) : run_(std::move(run)) {}

  static Play empty(const Game& game) {
    return Play(TraceRun(Trace(game.system.alphabet_ref()), game.initial, {}));
  }

  const Trace& trace() const { return run_.trace(); }
  const TraceRun& run() const { return run_; }
  int size() const { return trace().size(); }
  GlobalState final_state() const { return run_.final_state(); }

  /// Id-independent identity of the play: canonical word plus the δ choices
  /// listed in canonical-linearization order.
  std::pair<std::vector<ActionId>, std::vector<AState>> canonical_key() const {
    return {trace().canonical_form(), run_.reordered_choices()};
  }

  bool operator==(const Play& o) const { return run_ == o.run_; }
  bool operator<(const Play& o) const { return canonical_key() < o.canonical_key(); }

private:
  TraceRun run_;
};

/// One-event extensions of `p` by action `a`: one play per system choice.
/// Empty iff `a` is not enabled at the final state.
inline std::vector<Play> step(const Game& game, const Play& p, ActionId a) {
  std::vector<Play> out;
  GlobalState s = p.final_state();
  AState src = game.system.restrict_to(s, a);
  const auto& tgts = game.system.targets(a, src);
  if (tgts.empty()) return out;
  auto [t2, ev] = p.trace().append(a);
  (void)ev;
  for (const AState& tgt : tgts) {
    std::vector<AState> choices = p.run().choices();
    choices.push_back(tgt);
    out.emplace_back(TraceRun(t2, game.initial, std::move(choices)));
  }
  return out;
}

inline bool is_maximal(const Game& game, const Play& p) {
  return game.system.enabled(p.final_state()).empty();
}

/// States labeling the configurations of the play, deduplicated.
inline std::set<GlobalState> play_states(const Play& p) {
  std::set<GlobalState> out;
  for (const auto& c : p.trace().configurations()) out.insert(p.run().state_at(c));
  return out;
}

inline bool visits_unsafe(const Game& game, const Play& p) {
  if (!game.condition.is_safety()) return false;
  for (const auto& c : p.trace().configurations())
    if (!game.condition.safe(p.run().state_at(c))) return true;
  return false;
}

inline bool hits_target(const Game& game, const Play& p) {
  if (game.condition.is_safety()) return false;
  for (const auto& c : p.trace().configurations())
    if (game.condition.in_target(p.run().state_at(c))) return true;
  return false;
}

/// Winner of a play, judged over all configurations of the trace. Intended
/// for maximal plays; for safety the verdict is monotone, so callers may
/// use it on partial plays for early exits.
inline Player winner(const Game& game, const Play& p) {
  if (game.condition.is_safety())
    return visits_unsafe(game, p) ? Player::Environment : Player::System;
  return hits_target(game, p) ? Player::System : Player::Environment;
}

/**
 * Exhaustively unfolds the game. Returns every maximal play with at most
 * `horizon` events, plus a flag telling whether some non-maximal play with
 * exactly `horizon` events exists (the unfolding was cut short).
 */
inline std::pair<std::vector<Play>, bool> all_maximal_plays(const Game& game, int horizon,
                                                            std::size_t cap = 1'000'000) {
  std::vector<Play> maximal;
  bool truncated = false;
  std::set<std::pair<std::vector<ActionId>, std::vector<AState>>> seen;
  std::deque<Play> work;
  Play start = Play::empty(game);
  seen.insert(start.canonical_key());
  work.push_back(std::move(start));
  std::size_t processed = 0;
  while (!work.empty()) {
    Play p = std::move(work.front());
    work.pop_front();
    if (++processed > cap) throw ExplosionCapError("play unfolding exceeded cap", cap);
    auto acts = game.system.enabled(p.final_state());
    if (acts.empty()) {
      maximal.push_back(std::move(p));
      continue;
    }
    if (p.size() >= horizon) {
      truncated = true;
      continue;
    }
    for (ActionId a : acts)
      for (Play& q : step(game, p, a))
        if (seen.insert(q.canonical_key()).second) work.push_back(std::move(q));
  }
  std::sort(maximal.begin(), maximal.end());
  return {std::move(maximal), truncated};
}

/// Text block for a play: canonical linearization with per-step states.
inline std::string play_transcript(const Game& game, const Play& p) {
  std::ostringstream os;
  const auto& sys = game.system;
  os << "  trace: " << (p.trace().empty() ? "(empty)" : p.trace().canonical_word()) << '\n';
  std::vector<int> order = p.trace().canonical_order();
  Configuration c;
  os << "  state 0: " << sys.state_to_string(p.run().state_at(c)) << '\n';
  for (std::size_t k = 0; k < order.size(); ++k) {
    c = c.with(order[k]);
    os << "  state " << (k + 1) << " after "
       << sys.alphabet().action_name(p.trace().label(order[k])) << ": "
       << sys.state_to_string(p.run().state_at(c)) << '\n';
  }
  if (game.condition.is_safety()) {
    for (const auto& cfg : p.trace().configurations()) {
      GlobalState s = p.run().state_at(cfg);
      if (!game.condition.safe(s)) {
        Trace sub = p.trace().subtrace(cfg);
        os << "  unsafe at configuration {" << sub.canonical_word()
           << "}: " << sys.state_to_string(s) << '\n';
        break;
      }
    }
  } else {
    for (const auto& cfg : p.trace().configurations()) {
      GlobalState s = p.run().state_at(cfg);
      if (game.condition.in_target(s)) {
        Trace sub = p.trace().subtrace(cfg);
        os << "  target at configuration {" << sub.canonical_word()
           << "}: " << sys.state_to_string(s) << '\n';
        break;
      }
    }
  }
  return os.str();
}

} // namespace atsg

#endif
