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

#ifndef ATSG_STRATEGY_HPP
#define ATSG_STRATEGY_HPP

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "atsg/game.hpp"

namespace atsg {

/// Canonical form of a prime trace ↓e; the key of strategy response tables.
using PrimeKey = std::vector<ActionId>;

/**
 * A distributed strategy with causal memory. When the environment schedules
 * an action, the participating processes see exactly the causal past ↓e of
 * the new event; the strategy stores, per canonical prime trace, the a-state
 * those processes move to. The full trace-to-global-state map σ is assembled
 * per process from views (sigma_eval), so equal causal pasts always get
 * equal responses, whatever the scheduling order was.
 */
struct DistributedStrategy {
  std::map<PrimeKey, AState> responses;

  bool operator==(const DistributedStrategy& o) const { return responses == o.responses; }
  bool operator!=(const DistributedStrategy& o) const { return !(*this == o); }
};

/// Positional full-information strategy: a successor choice per
/// (global state, scheduled action).
struct SequentialStrategy {
  std::map<std::pair<GlobalState, ActionId>, GlobalState> choice;

  bool operator==(const SequentialStrategy& o) const { return choice == o.choice; }
};

enum class VerdictKind { SystemWins, EnvironmentWins, Unknown };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::SystemWins: return "SystemWins";
    case VerdictKind::EnvironmentWins: return "EnvironmentWins";
    default: return "Unknown";
  }
}

/// Outcome of a solver call, with replayable evidence.
struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  // SystemWins witnesses.
  std::optional<DistributedStrategy> strategy;
  std::optional<SequentialStrategy> sequential;
  // EnvironmentWins evidence: a losing play conforming to the refuted table,
  // or (sequential solver) a positional scheduling choice for the environment.
  std::optional<Play> counterexample;
  std::optional<DistributedStrategy> refuted;
  std::optional<std::map<GlobalState, ActionId>> env_moves;
  std::string reason; // Unknown only
  long strategies_examined = 0;
};

// -- strategy evaluation -----------------------------------------------------

inline std::string prime_word(const DistributedAlphabet& alpha, const PrimeKey& key) {
  std::ostringstream os;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) os << ' ';
    os << alpha.action_name(key[i]);
  }
  return os.str();
}

namespace detail {

inline PrimeKey prime_key_of(const Trace& t, int event_id) {
  return t.subtrace(t.prime_of(event_id)).canonical_form();
}

inline const AState& response_at(const DistributedAlphabet& alpha, const DistributedStrategy& s,
                                 const PrimeKey& key) {
  auto it = s.responses.find(key);
  if (it == s.responses.end()) throw MissingResponseError(prime_word(alpha, key));
  return it->second;
}

} // namespace detail

/**
 * σ(t): the global state the strategy reaches after trace `t`. Component i
 * is the initial state if process i saw nothing, else the i-component of
 * the response stored for i's view (a prime trace). Requires a response for
 * every prime sub-trace of `t`.
 */
inline GlobalState sigma_eval(const Game& game, const DistributedStrategy& sigma, const Trace& t) {
  const auto& alpha = t.alphabet();
  std::vector<PrimeKey> keys(t.size());
  for (int e = 0; e < t.size(); ++e) {
    keys[e] = detail::prime_key_of(t, e);
    detail::response_at(alpha, sigma, keys[e]); // totality check
  }
  GlobalState s = game.initial;
  Configuration full = t.full_configuration();
  for (ProcessId p = 0; p < alpha.process_count(); ++p) {
    auto m = t.max_event(full, p);
    if (!m) continue;
    const AState& resp = sigma.responses.at(keys[m->id]);
    s[p] = resp[alpha.loc_slot(m->action, p)];
  }
  return s;
}

/**
 * Whether the play's run agrees with σ on every configuration. Since both
 * sides assemble states per process from views, this holds exactly when the
 * run's δ choice at each event equals the response for that event's causal
 * past.
 */
inline bool conforms(const Game& game, const Play& p, const DistributedStrategy& sigma) {
  (void)game;
  const Trace& t = p.trace();
  for (int e = 0; e < t.size(); ++e) {
    const AState& resp =
        detail::response_at(t.alphabet(), sigma, detail::prime_key_of(t, e));
    if (p.run().choice(e) != resp) return false;
  }
  return true;
}

/// Checks that every stored response is a δ transition from the state σ
/// reaches on the response's causal past, and that keys are canonical primes.
inline void validate_strategy(const Game& game, const DistributedStrategy& sigma) {
  std::vector<const PrimeKey*> keys;
  for (const auto& [k, r] : sigma.responses) keys.push_back(&k);
  std::sort(keys.begin(), keys.end(), [](const PrimeKey* a, const PrimeKey* b) {
    return a->size() != b->size() ? a->size() < b->size() : *a < *b;
  });
  const auto& alpha = game.system.alphabet();
  for (const PrimeKey* kp : keys) {
    const PrimeKey& key = *kp;
    if (key.empty()) throw Error("strategy: empty prime trace key");
    for (ActionId a : key)
      if (a < 0 || a >= alpha.action_count()) throw Error("strategy: key action outside alphabet");
    Trace t = Trace::from_word(game.system.alphabet_ref(), key);
    int last = t.size() - 1;
    if (static_cast<int>(t.prime_of(last).size()) != t.size())
      throw Error("strategy: key \"" + prime_word(alpha, key) + "\" is not a prime trace");
    if (t.canonical_form() != key)
      throw Error("strategy: key \"" + prime_word(alpha, key) + "\" is not in canonical form");
    std::vector<int> past_ids;
    for (int e = 0; e < last; ++e) past_ids.push_back(e);
    Trace past = t.subtrace(Configuration::from_ids(past_ids));
    GlobalState before = sigma_eval(game, sigma, past);
    ActionId a = t.label(last);
    AState src = game.system.restrict_to(before, a);
    const auto& tgts = game.system.targets(a, src);
    const AState& resp = sigma.responses.at(key);
    if (std::find(tgts.begin(), tgts.end(), resp) == tgts.end())
      throw Error("strategy: response at \"" + prime_word(alpha, key) +
                  "\" is not a delta transition from " + game.system.astate_to_string(a, src));
  }
}

/// Strategy table rendered one response per line: "prime-word -> (a-state)".
inline std::string strategy_to_text(const Game& game, const DistributedStrategy& sigma) {
  std::ostringstream os;
  const auto& alpha = game.system.alphabet();
  for (const auto& [key, resp] : sigma.responses) {
    Trace t = Trace::from_word(game.system.alphabet_ref(), key);
    ActionId a = t.label(t.size() - 1);
    os << prime_word(alpha, key) << " -> " << game.system.astate_to_string(a, resp) << '\n';
  }
  return os.str();
}

// -- conforming-play unfolding ------------------------------------------------

namespace detail {

inline Play extend_play(const Game& game, const Play& p, ActionId a, const AState& resp) {
  auto [t2, ev] = p.trace().append(a);
  (void)ev;
  std::vector<AState> choices = p.run().choices();
  choices.push_back(resp);
  return Play(TraceRun(std::move(t2), game.initial, std::move(choices)));
}

inline PrimeKey extension_key(const Play& p, ActionId a) {
  auto [t2, ev] = p.trace().append(a);
  return prime_key_of(t2, ev.id);
}

/// The unique σ-conforming extension of `p` by `a`; checks δ-validity.
inline Play conforming_extension(const Game& game, const Play& p, ActionId a,
                                 const DistributedStrategy& sigma) {
  PrimeKey key = extension_key(p, a);
  const AState& resp = response_at(game.system.alphabet(), sigma, key);
  AState src = game.system.restrict_to(p.final_state(), a);
  const auto& tgts = game.system.targets(a, src);
  if (std::find(tgts.begin(), tgts.end(), resp) == tgts.end())
    throw Error("strategy response at \"" + prime_word(game.system.alphabet(), key) +
                "\" is not a delta transition");
  return extend_play(game, p, a, resp);
}

} // namespace detail

/**
 * All maximal plays conforming to σ within the horizon, plus a truncation
 * flag: true iff some conforming non-maximal play has exactly `horizon`
 * events. The environment branches over enabled actions; the conforming
 * system response is unique, so plays are deduplicated by trace.
 */
inline std::pair<std::vector<Play>, bool> strategy_outcomes(const Game& game,
                                                            const DistributedStrategy& sigma,
                                                            int horizon,
                                                            std::size_t cap = 1'000'000) {
  std::vector<Play> maximal;
  bool truncated = false;
  std::set<std::vector<ActionId>> seen;
  std::deque<Play> work;
  work.push_back(Play::empty(game));
  seen.insert({});
  std::size_t processed = 0;
  while (!work.empty()) {
    Play p = std::move(work.front());
    work.pop_front();
    if (++processed > cap) throw ExplosionCapError("conforming unfolding exceeded cap", cap);
    auto acts = game.system.enabled(p.final_state());
    if (acts.empty()) {
      maximal.push_back(std::move(p));
      continue;
    }
    if (p.size() >= horizon) {
      truncated = true;
      continue;
    }
    for (ActionId a : acts) {
      Play q = detail::conforming_extension(game, p, a, sigma);
      if (seen.insert(q.trace().canonical_form()).second) work.push_back(std::move(q));
    }
  }
  std::sort(maximal.begin(), maximal.end());
  return {std::move(maximal), truncated};
}

/**
 * Verdict for a fixed strategy: SystemWins when every conforming maximal
 * play within the horizon is won and the unfolding was not truncated;
 * EnvironmentWins with a losing conforming play as counterexample (for
 * safety, a partial play that already visited an unsafe state suffices);
 * Unknown when only the horizon stopped the analysis.
 */
inline Verdict is_winning_strategy(const Game& game, const DistributedStrategy& sigma,
                                   int horizon, std::size_t cap = 1'000'000) {
  Verdict v;
  v.strategies_examined = 1;
  bool truncated = false;
  std::set<std::vector<ActionId>> seen;
  std::deque<Play> work;
  work.push_back(Play::empty(game));
  seen.insert({});
  std::size_t processed = 0;
  while (!work.empty()) {
    Play p = std::move(work.front());
    work.pop_front();
    if (++processed > cap) throw ExplosionCapError("conforming unfolding exceeded cap", cap);
    if (game.condition.is_safety() && visits_unsafe(game, p)) {
      v.kind = VerdictKind::EnvironmentWins;
      v.counterexample = std::move(p);
      v.refuted = sigma;
      return v;
    }
    auto acts = game.system.enabled(p.final_state());
    if (acts.empty()) {
      if (!game.condition.is_safety() && !hits_target(game, p)) {
        v.kind = VerdictKind::EnvironmentWins;
        v.counterexample = std::move(p);
        v.refuted = sigma;
        return v;
      }
      continue;
    }
    if (p.size() >= horizon) {
      truncated = true;
      continue;
    }
    for (ActionId a : acts) {
      Play q = detail::conforming_extension(game, p, a, sigma);
      if (seen.insert(q.trace().canonical_form()).second) work.push_back(std::move(q));
    }
  }
  if (truncated) {
    v.kind = VerdictKind::Unknown;
    v.reason = "horizon exhausted before every conforming play ended";
  } else {
    v.kind = VerdictKind::SystemWins;
    v.strategy = sigma;
  }
  return v;
}

// -- distributed solving -------------------------------------------------------

namespace detail {

/**
 * Backtracking AND-OR search over response tables. Environment choices are
 * AND branches; the response at each newly met prime trace is an OR branch
 * over δ-compatible a-states, explored in canonical order. The table is
 * shared by all AND branches, so a response fixed in one branch constrains
 * its siblings; backtracking is chronological over table entries.
 */
struct DistributedSearch {
  enum class Out { Won, Lost, Undetermined };
  struct Result {
    Out out = Out::Undetermined;
    std::optional<Play> losing_play;
    std::map<PrimeKey, AState> table_snapshot;
  };

  const Game& game;
  int horizon;
  std::size_t cap;
  std::size_t processed = 0;
  long terminals = 0;
  std::map<PrimeKey, AState> table;

  Result explore(std::deque<Play> queue, std::set<std::vector<ActionId>> seen, bool truncated) {
    while (!queue.empty()) {
      Play p = std::move(queue.front());
      queue.pop_front();
      if (++processed > cap)
        throw ExplosionCapError("distributed-strategy search exceeded cap", cap);
      if (game.condition.is_safety() && visits_unsafe(game, p)) {
        ++terminals;
        return {Out::Lost, std::move(p), table};
      }
      auto acts = game.system.enabled(p.final_state());
      if (acts.empty()) {
        if (!game.condition.is_safety() && !hits_target(game, p)) {
          ++terminals;
          return {Out::Lost, std::move(p), table};
        }
        continue;
      }
      if (p.size() >= horizon) {
        truncated = true;
        continue;
      }
      ActionId branch_action = -1;
      PrimeKey branch_key;
      for (ActionId a : acts) {
        PrimeKey k = extension_key(p, a);
        if (!table.count(k)) {
          branch_action = a;
          branch_key = std::move(k);
          break;
        }
      }
      if (branch_action >= 0) {
        AState src = game.system.restrict_to(p.final_state(), branch_action);
        std::vector<AState> cands = game.system.targets(branch_action, src);
        std::deque<Play> requeued = queue;
        requeued.push_front(std::move(p));
        std::optional<Result> first_lost;
        bool any_undetermined = false;
        for (const AState& cand : cands) {
          table[branch_key] = cand;
          Result r = explore(requeued, seen, truncated);
          table.erase(branch_key);
          if (r.out == Out::Won) return r;
          if (r.out == Out::Undetermined)
            any_undetermined = true;
          else if (!first_lost)
            first_lost = std::move(r);
        }
        if (any_undetermined || !first_lost) return {Out::Undetermined, std::nullopt, {}};
        return std::move(*first_lost);
      }
      for (ActionId a : acts) {
        Play q = extend_play(game, p, a, table.at(extension_key(p, a)));
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
 * Decides whether some distributed strategy wins every conforming play that
 * ends within the horizon. SystemWins and EnvironmentWins are only claimed
 * from untruncated unfoldings; otherwise the verdict is Unknown (the general
 * problem admits no algorithm, so the horizon is a hard boundary).
 */
inline Verdict solve_distributed(const Game& game, int horizon, std::size_t cap = 1'000'000) {
  detail::DistributedSearch search{game, horizon, cap};
  std::deque<Play> queue;
  queue.push_back(Play::empty(game));
  std::set<std::vector<ActionId>> seen;
  seen.insert({});
  auto r = search.explore(std::move(queue), std::move(seen), false);
  Verdict v;
  v.strategies_examined = search.terminals;
  switch (r.out) {
    case detail::DistributedSearch::Out::Won:
      v.kind = VerdictKind::SystemWins;
      v.strategy = DistributedStrategy{std::move(r.table_snapshot)};
      break;
    case detail::DistributedSearch::Out::Lost:
      v.kind = VerdictKind::EnvironmentWins;
      v.counterexample = std::move(r.losing_play);
      v.refuted = DistributedStrategy{std::move(r.table_snapshot)};
      break;
    case detail::DistributedSearch::Out::Undetermined:
      v.kind = VerdictKind::Unknown;
      v.reason = "horizon exhausted before the search could decide";
      break;
  }
  return v;
}

/**
 * Every complete response table reachable under its own play unfolding, in
 * canonical order. Fails with TruncatedError when some conforming play of
 * some table does not end within the horizon.
 */
inline std::vector<DistributedStrategy> enumerate_distributed_strategies(
    const Game& game, int horizon, std::size_t cap = 1'000'000) {
  std::vector<DistributedStrategy> out;
  std::map<PrimeKey, AState> table;
  std::size_t processed = 0;

  std::function<void(std::deque<Play>, std::set<std::vector<ActionId>>)> go =
      [&](std::deque<Play> queue, std::set<std::vector<ActionId>> seen) {
        while (!queue.empty()) {
          Play p = std::move(queue.front());
          queue.pop_front();
          if (++processed > cap)
            throw ExplosionCapError("strategy enumeration exceeded cap", cap);
          auto acts = game.system.enabled(p.final_state());
          if (acts.empty()) continue;
          if (p.size() >= horizon)
            throw TruncatedError("conforming play over trace \"" + p.trace().canonical_word() +
                                 "\" does not end within the horizon");
          ActionId branch_action = -1;
          PrimeKey branch_key;
          for (ActionId a : acts) {
            PrimeKey k = detail::extension_key(p, a);
            if (!table.count(k)) {
              branch_action = a;
              branch_key = std::move(k);
              break;
            }
          }
          if (branch_action >= 0) {
            AState src = game.system.restrict_to(p.final_state(), branch_action);
            std::vector<AState> cands = game.system.targets(branch_action, src);
            std::deque<Play> requeued = queue;
            requeued.push_front(std::move(p));
            for (const AState& cand : cands) {
              table[branch_key] = cand;
              go(requeued, seen);
              table.erase(branch_key);
            }
            return;
          }
          for (ActionId a : acts) {
            Play q = detail::extend_play(game, p, a, table.at(detail::extension_key(p, a)));
            if (seen.insert(q.trace().canonical_form()).second) queue.push_back(std::move(q));
          }
        }
        if (out.size() >= cap) throw ExplosionCapError("strategy enumeration exceeded cap", cap);
        out.push_back(DistributedStrategy{table});
      };

  std::deque<Play> queue;
  queue.push_back(Play::empty(game));
  std::set<std::vector<ActionId>> seen;
  seen.insert({});
  go(std::move(queue), std::move(seen));
  return out;
}

// -- sequential (full-information) solving -------------------------------------

/**
 * Solves the positional game on the global-state graph where the environment
 * schedules any enabled action and the system picks the successor.
 *
 * Safety: greatest fixed point W of
 *   s ∈ W  iff  s safe and for every enabled a some δ̂_a successor is in W.
 * Reachability: least fixed point R containing the target with
 *   s ∈ R  if  enabled(s) ≠ ∅ and every enabled a has a δ̂_a successor in R.
 *
 * Returns the verdict for the initial state plus the winning region W_sys.
 * SystemWins carries a positional witness; EnvironmentWins carries a
 * positional scheduling choice that keeps the play losing.
 */
inline std::pair<Verdict, std::vector<GlobalState>> solve_sequential(const Game& game,
                                                                     std::size_t cap = 1u << 22) {
  const auto& sys = game.system;
  std::vector<GlobalState> all = sys.all_global_states(cap);
  std::map<GlobalState, bool> in_region;
  Verdict v;

  if (game.condition.is_safety()) {
    for (const auto& s : all) in_region[s] = game.condition.safe(s);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& s : all) {
        if (!in_region[s]) continue;
        for (ActionId a : sys.enabled(s)) {
          bool some = false;
          for (const auto& t : sys.global_successors(s, a))
            if (in_region[t]) {
              some = true;
              break;
            }
          if (!some) {
            in_region[s] = false;
            changed = true;
            break;
          }
        }
      }
    }
  } else {
    for (const auto& s : all) in_region[s] = game.condition.in_target(s);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& s : all) {
        if (in_region[s]) continue;
        auto acts = sys.enabled(s);
        if (acts.empty()) continue;
        bool every = true;
        for (ActionId a : acts) {
          bool some = false;
          for (const auto& t : sys.global_successors(s, a))
            if (in_region[t]) {
              some = true;
              break;
            }
          if (!some) {
            every = false;
            break;
          }
        }
        if (every) {
          in_region[s] = true;
          changed = true;
        }
      }
    }
  }

  std::vector<GlobalState> region;
  for (const auto& s : all)
    if (in_region[s]) region.push_back(s);

  if (in_region[game.initial]) {
    v.kind = VerdictKind::SystemWins;
    // Positional witness. For reachability the choice must make progress,
    // so pick a successor of minimal fixed-point rank.
    std::map<GlobalState, int> rank;
    if (!game.condition.is_safety()) {
      for (const auto& s : region) rank[s] = game.condition.in_target(s) ? 0 : -1;
      bool changed = true;
      int level = 0;
      while (changed) {
        changed = false;
        ++level;
        for (const auto& s : region) {
          if (rank[s] >= 0) continue;
          auto acts = sys.enabled(s);
          bool every = !acts.empty();
          for (ActionId a : acts) {
            bool some = false;
            for (const auto& t : sys.global_successors(s, a))
              if (in_region[t] && rank[t] >= 0 && rank[t] < level) {
                some = true;
                break;
              }
            if (!some) {
              every = false;
              break;
            }
          }
          if (every) {
            rank[s] = level;
            changed = true;
          }
        }
      }
    }
    SequentialStrategy strat;
    for (const auto& s : region) {
      if (!game.condition.is_safety() && game.condition.in_target(s))
        continue; // the play is already won; no choices needed past the target
      for (ActionId a : sys.enabled(s)) {
        std::optional<GlobalState> best;
        for (const auto& t : sys.global_successors(s, a)) {
          if (!in_region[t]) continue;
          if (!best) {
            best = t;
          } else if (!game.condition.is_safety() && rank[t] < rank[*best]) {
            best = t;
          }
          if (game.condition.is_safety()) break; // canonical first member
        }
        if (best) strat.choice[{s, a}] = std::move(*best);
      }
    }
    v.sequential = std::move(strat);
  } else {
    v.kind = VerdictKind::EnvironmentWins;
    // Positional environment witness on the complement.
    std::map<GlobalState, ActionId> moves;
    if (game.condition.is_safety()) {
      // Attractor to the unsafe set: rank 0 = unsafe, rank k+1 = some
      // enabled action all of whose successors are ranked.
      std::map<GlobalState, int> rank;
      for (const auto& s : all)
        if (!game.condition.safe(s)) rank[s] = 0;
      bool changed = true;
      while (changed) {
        changed = false;
        for (const auto& s : all) {
          if (rank.count(s)) continue;
          for (ActionId a : sys.enabled(s)) {
            bool every = true;
            for (const auto& t : sys.global_successors(s, a))
              if (!rank.count(t)) {
                every = false;
                break;
              }
            if (every) {
              rank[s] = 1;
              moves[s] = a;
              changed = true;
              break;
            }
          }
        }
      }
    } else {
      for (const auto& s : all) {
        if (in_region[s]) continue;
        for (ActionId a : sys.enabled(s)) {
          bool none = true;
          for (const auto& t : sys.global_successors(s, a))
            if (in_region[t]) {
              none = false;
              break;
            }
          if (none) {
            moves[s] = a;
            break;
          }
        }
      }
    }
    v.env_moves = std::move(moves);
  }
  return {std::move(v), std::move(region)};
}

/// Global states reachable from the initial one when the system follows the
/// positional strategy and the environment schedules arbitrarily. Reachability
/// plays stop expanding once the target is hit (the play is won). Throws if
/// the strategy has no choice for a reachable (state, enabled action) pair.
inline std::set<GlobalState> sequential_reach(const Game& game, const SequentialStrategy& strat) {
  std::set<GlobalState> seen;
  std::deque<GlobalState> work;
  seen.insert(game.initial);
  work.push_back(game.initial);
  while (!work.empty()) {
    GlobalState s = std::move(work.front());
    work.pop_front();
    if (game.condition.in_target(s)) continue;
    for (ActionId a : game.system.enabled(s)) {
      auto it = strat.choice.find({s, a});
      if (it == strat.choice.end())
        throw Error("sequential strategy has no choice at " + game.system.state_to_string(s) +
                    " for action " + game.system.alphabet().action_name(a));
      if (seen.insert(it->second).second) work.push_back(it->second);
    }
  }
  return seen;
}

/// Sequential strategy rendered one choice per line:
/// "(state) action -> (state)".
inline std::string sequential_to_text(const Game& game, const SequentialStrategy& strat) {
  std::ostringstream os;
  for (const auto& [key, succ] : strat.choice)
    os << game.system.state_to_string(key.first) << ' '
       << game.system.alphabet().action_name(key.second) << " -> "
       << game.system.state_to_string(succ) << '\n';
  return os.str();
}

} // namespace atsg

#endif
