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

#ifndef ATSG_ASYN_GAME_HPP
#define ATSG_ASYN_GAME_HPP

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atsg/strategy.hpp"

namespace atsg {

/**
 * An asynchronous (control) game: a deterministic asynchronous automaton
 * whose actions are split into controllable (system) and uncontrollable
 * (environment) ones. Processes steer the game by allowing sets of
 * controllable actions based on their views; the environment schedules any
 * action that is both possible and allowed.
 */
struct AsynGame {
  AsyncTransitionSystem automaton;
  std::vector<bool> controllable; // indexed by action id
  GlobalState initial;
  WinningCondition condition;

  AsynGame(AsyncTransitionSystem aut, std::vector<bool> ctrl, GlobalState init,
           WinningCondition cond)
      : automaton(std::move(aut)), controllable(std::move(ctrl)), initial(std::move(init)),
        condition(std::move(cond)) {
    const auto& alpha = automaton.alphabet();
    if (static_cast<int>(controllable.size()) != alpha.action_count())
      throw Error("asynchronous game: partition must cover every action");
    for (ActionId a = 0; a < alpha.action_count(); ++a) {
      std::map<AState, int> outdeg;
      for (const auto& [src, tgt] : automaton.transitions(a)) {
        (void)tgt;
        if (++outdeg[src] > 1)
          throw Error("asynchronous game: action " + alpha.action_name(a) +
                      " is non-deterministic at " + automaton.astate_to_string(a, src));
      }
    }
    if (!automaton.valid_state(initial))
      throw Error("asynchronous game: invalid initial state");
    for (const auto& s : condition.states())
      if (!automaton.valid_state(s))
        throw Error("asynchronous game: condition mentions an invalid global state");
  }

  /// The same structure seen as an ATS game (used for plays, runs, winners).
  Game as_game() const { return Game(automaton, initial, condition); }

  bool operator==(const AsynGame& o) const {
    return automaton == o.automaton && controllable == o.controllable && initial == o.initial &&
           condition == o.condition;
  }
  bool operator!=(const AsynGame& o) const { return !(*this == o); }
};

/**
 * A control strategy: per process, a map from the process's view (as the
 * canonical word of the view trace) to the set of controllable actions the
 * process allows next. Allowed actions must be locally possible at the
 * process's state after the view.
 */
struct AsynStrategy {
  std::map<std::pair<ProcessId, PrimeKey>, std::set<ActionId>> allowed;

  bool operator==(const AsynStrategy& o) const { return allowed == o.allowed; }
  bool operator!=(const AsynStrategy& o) const { return !(*this == o); }
};

/// Canonical key of process `p`'s view of trace `t`.
inline PrimeKey asyn_view_key(const Trace& t, ProcessId p) {
  return t.subtrace(t.i_view(t.full_configuration(), p)).canonical_form();
}

/// Controllable actions of `ga` locally possible for process `p` in local
/// state `s`: some a-state extending s is in the domain of δ_a.
inline std::vector<ActionId> locally_enabled(const AsynGame& ga, ProcessId p, int s,
                                             bool want_controllable) {
  std::vector<ActionId> out;
  const auto& alpha = ga.automaton.alphabet();
  for (ActionId a : alpha.actions_of(p)) {
    if (ga.controllable[a] != want_controllable) continue;
    int slot = alpha.loc_slot(a, p);
    bool possible = false;
    for (const auto& [src, tgt] : ga.automaton.transitions(a)) {
      (void)tgt;
      if (src[slot] == s) {
        possible = true;
        break;
      }
    }
    if (possible) out.push_back(a);
  }
  return out;
}

namespace detail {

/// Consistent extensions of a play under a (possibly partial) allowance
/// table; an unresolved (process, view) query is reported instead.
struct AsynExtensions {
  std::vector<ActionId> actions;                       // consistent next actions
  std::optional<std::pair<ProcessId, PrimeKey>> query; // unresolved table key
};

inline AsynExtensions asyn_extensions(
    const AsynGame& ga, const Play& p,
    const std::map<std::pair<ProcessId, PrimeKey>, std::set<ActionId>>& table) {
  AsynExtensions ext;
  GlobalState s = p.final_state();
  std::vector<PrimeKey> views(ga.automaton.alphabet().process_count());
  std::vector<bool> have(views.size(), false);
  for (ActionId a : ga.automaton.enabled(s)) {
    if (!ga.controllable[a]) {
      ext.actions.push_back(a);
      continue;
    }
    bool allowed = true;
    for (ProcessId q : ga.automaton.alphabet().loc(a)) {
      if (!have[q]) {
        views[q] = asyn_view_key(p.trace(), q);
        have[q] = true;
      }
      auto it = table.find({q, views[q]});
      if (it == table.end()) {
        ext.query = {q, views[q]};
        return ext;
      }
      if (!it->second.count(a)) {
        allowed = false;
        break;
      }
    }
    if (allowed) ext.actions.push_back(a);
  }
  return ext;
}

inline Play asyn_extend(const AsynGame& ga, const Play& p, ActionId a) {
  GlobalState s = p.final_state();
  const auto& tgts = ga.automaton.targets(a, ga.automaton.restrict_to(s, a));
  auto [t2, ev] = p.trace().append(a);
  (void)ev;
  std::vector<AState> choices = p.run().choices();
  choices.push_back(tgts.at(0)); // deterministic
  return Play(TraceRun(std::move(t2), ga.initial, std::move(choices)));
}

} // namespace detail

/// Verdict for a total control strategy, by unfolding its consistent plays.
/// Maximality is strategy-relative: a play ends when no uncontrollable
/// action is possible and no allowed controllable action is possible.
inline Verdict is_winning_asyn_strategy(const AsynGame& ga, const AsynStrategy& sigma, int horizon,
                                        std::size_t cap = 1'000'000) {
  Game view = ga.as_game();
  Verdict v;
  v.strategies_examined = 1;
  bool truncated = false;
  std::set<std::vector<ActionId>> seen;
  std::deque<Play> work;
  work.push_back(Play::empty(view));
  seen.insert({});
  std::size_t processed = 0;
  while (!work.empty()) {
    Play p = std::move(work.front());
    work.pop_front();
    if (++processed > cap) throw ExplosionCapError("consistent unfolding exceeded cap", cap);
    if (view.condition.is_safety() && visits_unsafe(view, p)) {
      v.kind = VerdictKind::EnvironmentWins;
      v.counterexample = std::move(p);
      return v;
    }
    auto ext = detail::asyn_extensions(ga, p, sigma.allowed);
    if (ext.query)
      throw MissingResponseError(prime_word(ga.automaton.alphabet(), ext.query->second) +
                                 "\" for process " +
                                 ga.automaton.alphabet().process_name(ext.query->first));
    if (ext.actions.empty()) {
      if (!view.condition.is_safety() && !hits_target(view, p)) {
        v.kind = VerdictKind::EnvironmentWins;
        v.counterexample = std::move(p);
        return v;
      }
      continue;
    }
    if (p.size() >= horizon) {
      truncated = true;
      continue;
    }
    for (ActionId a : ext.actions) {
      Play q = detail::asyn_extend(ga, p, a);
      if (seen.insert(q.trace().canonical_form()).second) work.push_back(std::move(q));
    }
  }
  if (truncated) {
    v.kind = VerdictKind::Unknown;
    v.reason = "horizon exhausted before every consistent play ended";
  } else {
    v.kind = VerdictKind::SystemWins;
  }
  return v;
}

/// Result of the brute-force control-game search.
struct AsynVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<AsynStrategy> strategy;
  std::optional<Play> counterexample;
  std::optional<AsynStrategy> refuted;
  std::string reason;
  long strategies_examined = 0;
};

namespace detail {

struct AsynSearch {
  enum class Out { Won, Lost, Undetermined };
  struct Result {
    Out out = Out::Undetermined;
    std::optional<Play> losing_play;
    std::map<std::pair<ProcessId, PrimeKey>, std::set<ActionId>> table_snapshot;
  };

  const AsynGame& ga;
  const Game view;
  int horizon;
  std::size_t cap;
  std::size_t processed = 0;
  long terminals = 0;
  std::map<std::pair<ProcessId, PrimeKey>, std::set<ActionId>> table;

  AsynSearch(const AsynGame& g, int h, std::size_t c)
      : ga(g), view(g.as_game()), horizon(h), cap(c) {}

  Result explore(std::deque<Play> queue, std::set<std::vector<ActionId>> seen, bool truncated) {
    while (!queue.empty()) {
      Play p = std::move(queue.front());
      queue.pop_front();
      if (++processed > cap) throw ExplosionCapError("control-game search exceeded cap", cap);
      if (view.condition.is_safety() && visits_unsafe(view, p)) {
        ++terminals;
        return {Out::Lost, std::move(p), table};
      }
      auto ext = asyn_extensions(ga, p, table);
      if (ext.query) {
        // OR branch: candidate allowance sets are the subsets of the
        // locally possible controllable actions, in bitmask order.
        auto [proc, key] = *ext.query;
        int local = p.final_state()[proc];
        std::vector<ActionId> pool = locally_enabled(ga, proc, local, true);
        std::deque<Play> requeued = queue;
        requeued.push_front(std::move(p));
        std::optional<Result> first_lost;
        bool any_undetermined = false;
        for (unsigned mask = 0; mask < (1u << pool.size()); ++mask) {
          std::set<ActionId> chosen;
          for (std::size_t i = 0; i < pool.size(); ++i)
            if (mask & (1u << i)) chosen.insert(pool[i]);
          table[{proc, key}] = std::move(chosen);
          Result r = explore(requeued, seen, truncated);
          table.erase({proc, key});
          if (r.out == Out::Won) return r;
          if (r.out == Out::Undetermined)
            any_undetermined = true;
          else if (!first_lost)
            first_lost = std::move(r);
        }
        if (any_undetermined || !first_lost) return {Out::Undetermined, std::nullopt, {}};
        return std::move(*first_lost);
      }
      if (ext.actions.empty()) {
        if (!view.condition.is_safety() && !hits_target(view, p)) {
          ++terminals;
          return {Out::Lost, std::move(p), table};
        }
        continue;
      }
      if (p.size() >= horizon) {
        truncated = true;
        continue;
      }
      for (ActionId a : ext.actions) {
        Play q = asyn_extend(ga, p, a);
        if (seen.insert(q.trace().canonical_form()).second) queue.push_back(std::move(q));
      }
    }
    ++terminals;
    if (truncated) return {Out::Undetermined, std::nullopt, {}};
    return {Out::Won, std::nullopt, table};
  }
};

} // namespace detail

/**
 * Brute-force solver for the control game: AND-OR search over per-process
 * allowance tables, with the same horizon semantics as solve_distributed.
 * Serves as the independent side of the reduction's winner-conservation
 * checks.
 */
inline AsynVerdict solve_asyn_bruteforce(const AsynGame& ga, int horizon,
                                         std::size_t cap = 1'000'000) {
  detail::AsynSearch search(ga, horizon, cap);
  std::deque<Play> queue;
  queue.push_back(Play::empty(search.view));
  std::set<std::vector<ActionId>> seen;
  seen.insert({});
  auto r = search.explore(std::move(queue), std::move(seen), false);
  AsynVerdict v;
  v.strategies_examined = search.terminals;
  switch (r.out) {
    case detail::AsynSearch::Out::Won:
      v.kind = VerdictKind::SystemWins;
      v.strategy = AsynStrategy{std::move(r.table_snapshot)};
      break;
    case detail::AsynSearch::Out::Lost:
      v.kind = VerdictKind::EnvironmentWins;
      v.counterexample = std::move(r.losing_play);
      v.refuted = AsynStrategy{std::move(r.table_snapshot)};
      break;
    case detail::AsynSearch::Out::Undetermined:
      v.kind = VerdictKind::Unknown;
      v.reason = "horizon exhausted before the search could decide";
      break;
  }
  return v;
}

} // namespace atsg

#endif
