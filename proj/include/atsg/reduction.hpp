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

#ifndef ATSG_REDUCTION_HPP
#define ATSG_REDUCTION_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atsg/asyn_game.hpp"

namespace atsg {

/**
 * The compiled form of an asynchronous game together with the bookkeeping
 * needed to move plays and strategies back and forth.
 *
 * The image game adds one choice action per process. A process alternates
 * between pure states (only its choice action is possible, committing to a
 * set X of allowed actions that always includes every locally possible
 * environment action) and augmented states (s, X) from which ordinary
 * actions fire when all participants allow them, landing back in pure
 * states. Only states reachable from the initial pure state are emitted.
 */
struct Reduction {
  struct LocalInfo {
    int pure = 0;                   // index into the source process's states
    bool augmented = false;
    std::vector<ActionId> allowed;  // X, as sorted source action ids
  };

  AsynGame source;
  Game game;
  std::vector<ActionId> choice_action;    // per process: action id in `game`
  std::vector<ActionId> action_to_source; // game action id -> source id, -1 for choice actions
  std::vector<ActionId> action_from_source;
  std::vector<std::vector<LocalInfo>> local_info; // per process, per game local state
  std::vector<std::map<std::pair<int, std::vector<ActionId>>, int>> augmented_index;

  /// Pure projection of a state of the image game.
  GlobalState project_state(const GlobalState& s) const {
    std::vector<int> locals(s.size());
    for (ProcessId p = 0; p < s.size(); ++p) locals[p] = local_info[p][s[p]].pure;
    return GlobalState(std::move(locals));
  }
};

namespace detail {

// Local state of the image game while it is being built: the pure source
// state plus the index of the committed X set, or -1 when uncommitted.
using BuildLocal = std::pair<int, int>;

} // namespace detail

/**
 * Compiles an asynchronous game into an ATS game over the same processes
 * with |Σ| + |P| actions. All non-determinism of the image lives in the
 * choice actions; ordinary actions stay deterministic.
 */
inline Reduction build_ats_game(const AsynGame& ga) {
  const auto& alpha = ga.automaton.alphabet();
  const int nproc = alpha.process_count();

  // Fresh choice-action names.
  std::set<std::string> taken(alpha.action_names().begin(), alpha.action_names().end());
  std::vector<std::string> choice_names(nproc);
  for (ProcessId p = 0; p < nproc; ++p) {
    std::string name = "c_" + alpha.process_name(p);
    while (taken.count(name)) name += "'";
    taken.insert(name);
    choice_names[p] = name;
  }

  // Per (process, pure state): locally possible env actions and the ordered
  // list of X sets the choice action may commit to.
  std::vector<std::vector<std::vector<ActionId>>> env_local(nproc), sys_local(nproc);
  std::vector<std::vector<std::vector<std::vector<ActionId>>>> x_sets(nproc);
  for (ProcessId p = 0; p < nproc; ++p) {
    int nstates = ga.automaton.local_state_count(p);
    env_local[p].resize(nstates);
    sys_local[p].resize(nstates);
    x_sets[p].resize(nstates);
    for (int s = 0; s < nstates; ++s) {
      env_local[p][s] = locally_enabled(ga, p, s, false);
      sys_local[p][s] = locally_enabled(ga, p, s, true);
      const auto& pool = sys_local[p][s];
      for (unsigned mask = 0; mask < (1u << pool.size()); ++mask) {
        std::vector<ActionId> x = env_local[p][s];
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (mask & (1u << i)) x.push_back(pool[i]);
        std::sort(x.begin(), x.end());
        x_sets[p][s].push_back(std::move(x));
      }
    }
  }

  // Reachability sweep over the image game's global states.
  using BState = std::vector<detail::BuildLocal>;
  BState start(nproc);
  for (ProcessId p = 0; p < nproc; ++p) start[p] = {ga.initial[p], -1};

  std::set<BState> reachable;
  std::deque<BState> work;
  reachable.insert(start);
  work.push_back(start);
  std::vector<std::set<detail::BuildLocal>> local_seen(nproc);
  for (ProcessId p = 0; p < nproc; ++p) local_seen[p].insert(start[p]);
  // Transition pairs in build-local terms.
  std::vector<std::set<std::pair<detail::BuildLocal, detail::BuildLocal>>> choice_delta(nproc);
  std::map<ActionId, std::set<std::pair<std::vector<detail::BuildLocal>,
                                        std::vector<detail::BuildLocal>>>> action_delta;

  auto push_state = [&](BState s) {
    for (ProcessId p = 0; p < nproc; ++p) local_seen[p].insert(s[p]);
    if (reachable.insert(s).second) work.push_back(std::move(s));
  };

  while (!work.empty()) {
    BState s = std::move(work.front());
    work.pop_front();
    for (ProcessId p = 0; p < nproc; ++p) {
      if (s[p].second != -1) continue; // choice only departs pure states
      int pure = s[p].first;
      for (std::size_t xi = 0; xi < x_sets[p][pure].size(); ++xi) {
        detail::BuildLocal tgt{pure, static_cast<int>(xi)};
        choice_delta[p].insert({s[p], tgt});
        BState ns = s;
        ns[p] = tgt;
        push_state(std::move(ns));
      }
    }
    for (ActionId a = 0; a < alpha.action_count(); ++a) {
      const auto& procs = alpha.loc(a);
      bool ready = true;
      AState src_pure;
      std::vector<detail::BuildLocal> src_locals;
      for (ProcessId p : procs) {
        if (s[p].second < 0) {
          ready = false;
          break;
        }
        const auto& x = x_sets[p][s[p].first][s[p].second];
        if (!std::binary_search(x.begin(), x.end(), a)) {
          ready = false;
          break;
        }
        src_pure.push_back(s[p].first);
        src_locals.push_back(s[p]);
      }
      if (!ready) continue;
      const auto& tgts = ga.automaton.targets(a, src_pure);
      if (tgts.empty()) continue;
      const AState& tgt = tgts.front(); // deterministic
      std::vector<detail::BuildLocal> tgt_locals;
      BState ns = s;
      for (std::size_t k = 0; k < procs.size(); ++k) {
        detail::BuildLocal tl{tgt[k], -1};
        tgt_locals.push_back(tl);
        ns[procs[k]] = tl;
      }
      action_delta[a].insert({src_locals, tgt_locals});
      push_state(std::move(ns));
    }
  }

  // Index the reachable local states: pure first (source order), then
  // augmented ordered by (pure state, X index).
  std::vector<std::map<detail::BuildLocal, int>> local_index(nproc);
  std::vector<std::vector<std::string>> state_names(nproc);
  Reduction red{ga, Game(ga.automaton, ga.initial, ga.condition), {}, {}, {}, {}, {}};
  red.local_info.resize(nproc);
  red.augmented_index.resize(nproc);
  for (ProcessId p = 0; p < nproc; ++p) {
    std::vector<detail::BuildLocal> ordered(local_seen[p].begin(), local_seen[p].end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
      bool pa = a.second < 0, pb = b.second < 0;
      if (pa != pb) return pa; // pure before augmented
      return a < b;
    });
    std::set<std::string> used;
    for (const auto& bl : ordered) {
      std::string name = ga.automaton.local_state_name(p, bl.first);
      Reduction::LocalInfo info;
      info.pure = bl.first;
      if (bl.second >= 0) {
        info.augmented = true;
        info.allowed = x_sets[p][bl.first][bl.second];
        name += "@";
        for (std::size_t i = 0; i < info.allowed.size(); ++i) {
          if (i) name += "+";
          name += alpha.action_name(info.allowed[i]);
        }
      }
      while (used.count(name)) name += "'";
      used.insert(name);
      local_index[p][bl] = static_cast<int>(state_names[p].size());
      state_names[p].push_back(name);
      red.local_info[p].push_back(info);
      if (info.augmented)
        red.augmented_index[p][{info.pure, info.allowed}] = local_index[p][bl];
    }
  }

  // Image alphabet: each process keeps its local actions and gains its
  // choice action.
  std::vector<std::vector<std::string>> local_action_names(nproc);
  for (ProcessId p = 0; p < nproc; ++p) {
    for (ActionId a : alpha.actions_of(p)) local_action_names[p].push_back(alpha.action_name(a));
    local_action_names[p].push_back(choice_names[p]);
  }
  AlphabetRef image_alpha = make_alphabet(alpha.process_names(), local_action_names);

  red.choice_action.resize(nproc);
  for (ProcessId p = 0; p < nproc; ++p)
    red.choice_action[p] = *image_alpha->action_index(choice_names[p]);
  red.action_from_source.resize(alpha.action_count());
  red.action_to_source.assign(image_alpha->action_count(), -1);
  for (ActionId a = 0; a < alpha.action_count(); ++a) {
    ActionId ia = *image_alpha->action_index(alpha.action_name(a));
    red.action_from_source[a] = ia;
    red.action_to_source[ia] = a;
  }

  AsyncTransitionSystem image(image_alpha, state_names);
  for (ProcessId p = 0; p < nproc; ++p)
    for (const auto& [src, tgt] : choice_delta[p])
      image.add_transition(red.choice_action[p], {local_index[p][src]}, {local_index[p][tgt]});
  for (const auto& [a, pairs] : action_delta) {
    const auto& procs = alpha.loc(a);
    for (const auto& [src, tgt] : pairs) {
      AState from, to;
      for (std::size_t k = 0; k < procs.size(); ++k) {
        from.push_back(local_index[procs[k]][src[k]]);
        to.push_back(local_index[procs[k]][tgt[k]]);
      }
      image.add_transition(red.action_from_source[a], from, to);
    }
  }

  std::vector<int> init_locals(nproc);
  for (ProcessId p = 0; p < nproc; ++p) init_locals[p] = local_index[p][{ga.initial[p], -1}];
  GlobalState image_initial(std::move(init_locals));

  // The condition transfers through the pure projection: a state of the
  // image is unsafe (in the target) iff its projection is.
  std::set<GlobalState> marked;
  for (const BState& bs : reachable) {
    std::vector<int> locals(nproc), pure(nproc);
    for (ProcessId p = 0; p < nproc; ++p) {
      locals[p] = local_index[p][bs[p]];
      pure[p] = bs[p].first;
    }
    GlobalState projected{std::vector<int>(pure)};
    bool mark = ga.condition.is_safety() ? !ga.condition.safe(projected)
                                         : ga.condition.in_target(projected);
    if (mark) marked.insert(GlobalState(std::move(locals)));
  }
  WinningCondition image_cond = ga.condition.is_safety()
                                    ? WinningCondition::safety(std::move(marked))
                                    : WinningCondition::reachability(std::move(marked));

  red.game = Game(std::move(image), std::move(image_initial), std::move(image_cond));
  return red;
}

/**
 * The image-game trace of an asynchronous play: every event is preceded by
 * one choice event per participant, in process order. Fails when `w` is not
 * a play of the source automaton.
 */
inline Trace lift_play(const Reduction& red, const Trace& w) {
  const auto& ga = red.source;
  if (w.alphabet() != ga.automaton.alphabet())
    throw InvalidPlayError("trace alphabet does not match the source game");
  // Validate that the (unique) run exists.
  GlobalState s = ga.initial;
  std::vector<ActionId> lin = w.canonical_form();
  for (ActionId a : lin) {
    auto succs = ga.automaton.global_successors(s, a);
    if (succs.empty())
      throw InvalidPlayError("trace is not a play: action " +
                             ga.automaton.alphabet().action_name(a) + " is not enabled");
    s = succs.front();
  }
  std::vector<ActionId> word;
  for (ActionId a : lin) {
    for (ProcessId p : ga.automaton.alphabet().loc(a)) word.push_back(red.choice_action[p]);
    word.push_back(red.action_from_source[a]);
  }
  return Trace::from_word(red.game.system.alphabet_ref(), word);
}

/// Erases the choice events of an image-game trace.
inline Trace project_play(const Reduction& red, const Trace& lifted) {
  std::vector<ActionId> word;
  for (ActionId a : lifted.canonical_form()) {
    ActionId src = red.action_to_source.at(a);
    if (src >= 0) word.push_back(src);
  }
  return Trace::from_word(red.source.automaton.alphabet_ref(), word);
}

namespace detail {

/// Canonical source word of a lifted sub-trace.
inline PrimeKey project_word(const Reduction& red, const Trace& lifted_sub) {
  std::vector<ActionId> word;
  for (ActionId a : lifted_sub.canonical_form()) {
    ActionId src = red.action_to_source.at(a);
    if (src >= 0) word.push_back(src);
  }
  return Trace::from_word(red.source.automaton.alphabet_ref(), word).canonical_form();
}

} // namespace detail

/**
 * Lifts a control strategy to a distributed strategy of the image game by
 * unfolding its conforming plays up to `horizon` image events: at a choice
 * event of process p with view u the response commits to
 * (s_p, env-possible ∪ σ_p(u)); responses at ordinary events are forced.
 *
 * A view without a table entry commits to the environment-only set. Such
 * views are exactly those at which no controllable action of p ever becomes
 * jointly possible, so the committed controllable part is never consulted.
 */
inline DistributedStrategy lift_strategy(const Reduction& red, const AsynStrategy& sigma,
                                         int horizon, std::size_t cap = 1'000'000) {
  const Game& game = red.game;
  DistributedStrategy out;
  std::set<std::vector<ActionId>> seen;
  std::deque<Play> work;
  work.push_back(Play::empty(game));
  seen.insert({});
  std::size_t processed = 0;
  while (!work.empty()) {
    Play p = std::move(work.front());
    work.pop_front();
    if (++processed > cap) throw ExplosionCapError("strategy lifting exceeded cap", cap);
    if (p.size() >= horizon) continue;
    for (ActionId a : game.system.enabled(p.final_state())) {
      PrimeKey key = detail::extension_key(p, a);
      auto it = out.responses.find(key);
      AState resp;
      if (it != out.responses.end()) {
        resp = it->second;
      } else if (red.action_to_source[a] < 0) {
        ProcessId proc = game.system.alphabet().loc(a).front();
        const auto& info = red.local_info[proc][p.final_state()[proc]];
        if (info.augmented)
          throw Error("choice action enabled at an augmented state"); // cannot happen
        PrimeKey view = detail::project_word(
            red, p.trace().subtrace(p.trace().i_view(p.trace().full_configuration(), proc)));
        auto sit = sigma.allowed.find({proc, view});
        std::vector<ActionId> x = locally_enabled(red.source, proc, info.pure, false);
        if (sit != sigma.allowed.end())
          for (ActionId sa : sit->second) x.push_back(sa);
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
        auto ait = red.augmented_index[proc].find({info.pure, x});
        if (ait == red.augmented_index[proc].end())
          throw Error("control strategy allows an action that is not locally possible at " +
                      red.source.automaton.local_state_name(proc, info.pure));
        resp = {ait->second};
        out.responses.emplace(key, resp);
      } else {
        AState src = game.system.restrict_to(p.final_state(), a);
        const auto& tgts = game.system.targets(a, src);
        resp = tgts.front(); // ordinary actions are deterministic in the image
        out.responses.emplace(key, resp);
      }
      Play q = detail::extend_play(game, p, a, resp);
      if (seen.insert(q.trace().canonical_form()).second) work.push_back(std::move(q));
    }
  }
  return out;
}

/**
 * Reads a control strategy back off an image-game strategy: σ_p(u) is the
 * controllable part of the X committed at the choice event whose causal past
 * lifts u. Responses at ordinary events are ignored (they are forced).
 */
inline AsynStrategy project_strategy(const Reduction& red, const DistributedStrategy& sigma) {
  AsynStrategy out;
  const auto& alpha = red.source.automaton.alphabet();
  for (const auto& [key, resp] : sigma.responses) {
    ActionId last = key.back();
    if (red.action_to_source.at(last) >= 0) continue;
    ProcessId proc = red.game.system.alphabet().loc(last).front();
    PrimeKey past(key.begin(), key.end() - 1);
    PrimeKey view = Trace::from_word(red.game.system.alphabet_ref(), past).canonical_form();
    // Drop the remaining choice letters and renumber into the source alphabet.
    std::vector<ActionId> word;
    for (ActionId a : view) {
      ActionId src = red.action_to_source.at(a);
      if (src >= 0) word.push_back(src);
    }
    PrimeKey u = Trace::from_word(red.source.automaton.alphabet_ref(), word).canonical_form();
    if (resp.size() != 1) throw Error("malformed choice response");
    const auto& info = red.local_info[proc][resp.front()];
    if (!info.augmented)
      throw Error("choice response does not commit to an augmented state");
    std::set<ActionId> allowed;
    for (ActionId a : info.allowed)
      if (red.source.controllable[a]) allowed.insert(a);
    out.allowed[{proc, u}] = std::move(allowed);
  }
  return out;
}

} // namespace atsg

#endif
