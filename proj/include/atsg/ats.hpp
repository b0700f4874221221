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

#ifndef ATSG_ATS_HPP
#define ATSG_ATS_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "atsg/trace.hpp"

namespace atsg {

/// One local state per process, indexed by process id.
class GlobalState {
public:
  GlobalState() = default;
  explicit GlobalState(std::vector<int> locals) : locals_(std::move(locals)) {}

  int operator[](ProcessId p) const { return locals_.at(p); }
  int& operator[](ProcessId p) { return locals_.at(p); }
  int size() const { return static_cast<int>(locals_.size()); }
  const std::vector<int>& locals() const { return locals_; }

  bool operator==(const GlobalState& o) const { return locals_ == o.locals_; }
  bool operator!=(const GlobalState& o) const { return locals_ != o.locals_; }
  bool operator<(const GlobalState& o) const { return locals_ < o.locals_; }

private:
  std::vector<int> locals_;
};

/// Local states of the processes in loc(a), in loc(a) order.
using AState = std::vector<int>;

/**
 * A non-deterministic asynchronous transition system: per-process local
 * state spaces and, per action, a relation on a-states (assignments of
 * local states to the action's participants). The global relation is the
 * lift that leaves non-participants untouched.
 */
class AsyncTransitionSystem {
public:
  AsyncTransitionSystem(AlphabetRef alphabet,
                        std::vector<std::vector<std::string>> local_state_names)
      : alphabet_(std::move(alphabet)), state_names_(std::move(local_state_names)) {
    if (static_cast<int>(state_names_.size()) != alphabet_->process_count())
      throw Error("transition system: one state list per process required");
    for (int p = 0; p < alphabet_->process_count(); ++p) {
      if (state_names_[p].empty())
        throw Error("process " + alphabet_->process_name(p) + " has no local states");
      for (std::size_t i = 0; i < state_names_[p].size(); ++i)
        for (std::size_t j = i + 1; j < state_names_[p].size(); ++j)
          if (state_names_[p][i] == state_names_[p][j])
            throw Error("process " + alphabet_->process_name(p) + ": duplicate state \"" +
                        state_names_[p][i] + "\"");
    }
    delta_.resize(alphabet_->action_count());
  }

  const DistributedAlphabet& alphabet() const { return *alphabet_; }
  const AlphabetRef& alphabet_ref() const { return alphabet_; }

  int local_state_count(ProcessId p) const { return static_cast<int>(state_names_.at(p).size()); }
  const std::string& local_state_name(ProcessId p, int s) const { return state_names_.at(p).at(s); }
  const std::vector<std::vector<std::string>>& local_state_names() const { return state_names_; }

  std::optional<int> local_state_index(ProcessId p, std::string_view name) const {
    const auto& names = state_names_.at(p);
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return std::nullopt;
  }

  void add_transition(ActionId a, AState from, AState to) {
    check_astate(a, from);
    check_astate(a, to);
    auto& targets = delta_.at(a)[from];
    auto it = std::lower_bound(targets.begin(), targets.end(), to);
    if (it == targets.end() || *it != to) targets.insert(it, to);
  }

  /// All (source, target) pairs of δ_a, canonically ordered.
  std::vector<std::pair<AState, AState>> transitions(ActionId a) const {
    std::vector<std::pair<AState, AState>> out;
    for (const auto& [src, tgts] : delta_.at(a))
      for (const auto& tgt : tgts) out.emplace_back(src, tgt);
    return out;
  }

  std::size_t transition_count(ActionId a) const {
    std::size_t n = 0;
    for (const auto& [src, tgts] : delta_.at(a)) n += tgts.size();
    return n;
  }

  /// δ_a targets from a source a-state; empty when the action is blocked.
  const std::vector<AState>& targets(ActionId a, const AState& src) const {
    static const std::vector<AState> none;
    auto it = delta_.at(a).find(src);
    return it == delta_.at(a).end() ? none : it->second;
  }

  AState restrict_to(const GlobalState& s, ActionId a) const {
    AState r;
    r.reserve(alphabet_->loc(a).size());
    for (ProcessId p : alphabet_->loc(a)) r.push_back(s[p]);
    return r;
  }

  /// The lifted relation: apply δ_a on loc(a), keep everything else.
  std::vector<GlobalState> global_successors(const GlobalState& s, ActionId a) const {
    std::vector<GlobalState> out;
    const auto& procs = alphabet_->loc(a);
    for (const AState& tgt : targets(a, restrict_to(s, a))) {
      GlobalState ns = s;
      for (std::size_t k = 0; k < procs.size(); ++k) ns[procs[k]] = tgt[k];
      out.push_back(std::move(ns));
    }
    return out;
  }

  bool action_enabled(const GlobalState& s, ActionId a) const {
    return !targets(a, restrict_to(s, a)).empty();
  }

  std::vector<ActionId> enabled(const GlobalState& s) const {
    std::vector<ActionId> out;
    for (ActionId a = 0; a < alphabet_->action_count(); ++a)
      if (action_enabled(s, a)) out.push_back(a);
    return out;
  }

  /// Every action enabled at every global state. Enabledness of a only
  /// depends on the a-state, so it suffices to sweep S_a per action.
  bool is_complete() const {
    for (ActionId a = 0; a < alphabet_->action_count(); ++a) {
      bool all = true;
      for_each_astate(a, [&](const AState& src) {
        if (targets(a, src).empty()) all = false;
      });
      if (!all) return false;
    }
    return true;
  }

  bool valid_state(const GlobalState& s) const {
    if (s.size() != alphabet_->process_count()) return false;
    for (ProcessId p = 0; p < s.size(); ++p)
      if (s[p] < 0 || s[p] >= local_state_count(p)) return false;
    return true;
  }

  /// The full product S_P in canonical (lexicographic) order.
  std::vector<GlobalState> all_global_states(std::size_t cap = 1u << 22) const {
    std::size_t total = 1;
    for (int p = 0; p < alphabet_->process_count(); ++p) {
      total *= static_cast<std::size_t>(local_state_count(p));
      if (total > cap) throw ExplosionCapError("global state space exceeds cap", cap);
    }
    std::vector<GlobalState> out;
    out.reserve(total);
    std::vector<int> cur(alphabet_->process_count(), 0);
    while (true) {
      out.push_back(GlobalState(cur));
      int p = alphabet_->process_count() - 1;
      while (p >= 0 && ++cur[p] == local_state_count(p)) cur[p--] = 0;
      if (p < 0) break;
    }
    return out;
  }

  void for_each_astate(ActionId a, const std::function<void(const AState&)>& fn) const {
    const auto& procs = alphabet_->loc(a);
    AState cur(procs.size(), 0);
    while (true) {
      fn(cur);
      int k = static_cast<int>(procs.size()) - 1;
      while (k >= 0 && ++cur[k] == local_state_count(procs[k])) cur[k--] = 0;
      if (k < 0) break;
    }
  }

  std::string state_to_string(const GlobalState& s) const {
    std::ostringstream os;
    os << '(';
    for (ProcessId p = 0; p < s.size(); ++p) {
      if (p) os << ", ";
      os << local_state_name(p, s[p]);
    }
    os << ')';
    return os.str();
  }

  std::string astate_to_string(ActionId a, const AState& st) const {
    std::ostringstream os;
    os << '(';
    const auto& procs = alphabet_->loc(a);
    for (std::size_t k = 0; k < procs.size(); ++k) {
      if (k) os << ", ";
      os << local_state_name(procs[k], st[k]);
    }
    os << ')';
    return os.str();
  }

  bool operator==(const AsyncTransitionSystem& o) const {
    return *alphabet_ == *o.alphabet_ && state_names_ == o.state_names_ && delta_ == o.delta_;
  }
  bool operator!=(const AsyncTransitionSystem& o) const { return !(*this == o); }

private:
  void check_astate(ActionId a, const AState& st) const {
    const auto& procs = alphabet_->loc(a);
    if (st.size() != procs.size())
      throw Error("a-state arity mismatch for action " + alphabet_->action_name(a));
    for (std::size_t k = 0; k < procs.size(); ++k)
      if (st[k] < 0 || st[k] >= local_state_count(procs[k]))
        throw Error("a-state component out of range for action " + alphabet_->action_name(a));
  }

  AlphabetRef alphabet_;
  std::vector<std::vector<std::string>> state_names_;
  std::vector<std::map<AState, std::vector<AState>>> delta_;
};

/**
 * One run of a system over a trace: the initial global state plus, for each
 * event, the a-state its participants moved to. That data determines the
 * global state of every configuration (state_at), because the state of
 * process i after configuration c only depends on the last i-event in c.
 */
class TraceRun {
public:
  TraceRun(Trace trace, GlobalState initial, std::vector<AState> choices)
      : trace_(std::move(trace)), initial_(std::move(initial)), choices_(std::move(choices)) {}

  const Trace& trace() const { return trace_; }
  const GlobalState& initial() const { return initial_; }
  const AState& choice(int event_id) const { return choices_.at(event_id); }
  const std::vector<AState>& choices() const { return choices_; }

  GlobalState state_at(const Configuration& c) const {
    GlobalState s = initial_;
    const auto& alpha = trace_.alphabet();
    for (ProcessId p = 0; p < alpha.process_count(); ++p) {
      auto m = trace_.max_event(c, p);
      if (m) s[p] = choices_[m->id][alpha.loc_slot(m->action, p)];
    }
    return s;
  }

  GlobalState final_state() const { return state_at(trace_.full_configuration()); }

  /// The ρ map materialized over the whole configuration lattice.
  std::map<Configuration, GlobalState> labeling(
      std::size_t cap = std::numeric_limits<std::size_t>::max()) const {
    std::map<Configuration, GlobalState> rho;
    for (const auto& c : trace_.configurations(cap)) rho.emplace(c, state_at(c));
    return rho;
  }

  /// Checks the run conditions against a system (used to re-verify runs).
  bool is_valid_run(const AsyncTransitionSystem& system) const {
    if (!system.valid_state(initial_)) return false;
    if (static_cast<int>(choices_.size()) != trace_.size()) return false;
    // Walk events in id order; ids linearize the trace, and the a-state in
    // force when an event fires equals its causal-past a-state.
    GlobalState s = initial_;
    const auto& alpha = trace_.alphabet();
    for (int e = 0; e < trace_.size(); ++e) {
      ActionId a = trace_.label(e);
      const auto& tgts = system.targets(a, system.restrict_to(s, a));
      if (std::find(tgts.begin(), tgts.end(), choices_[e]) == tgts.end()) return false;
      const auto& procs = alpha.loc(a);
      for (std::size_t k = 0; k < procs.size(); ++k) s[procs[k]] = choices_[e][k];
    }
    return true;
  }

  bool operator==(const TraceRun& o) const {
    return initial_ == o.initial_ && trace_ == o.trace_ && reordered_choices() == o.reordered_choices();
  }
  bool operator!=(const TraceRun& o) const { return !(*this == o); }

  /// Choices listed along the canonical linearization; id-independent.
  std::vector<AState> reordered_choices() const {
    std::vector<AState> out;
    out.reserve(choices_.size());
    for (int e : trace_.canonical_order()) out.push_back(choices_[e]);
    return out;
  }

private:
  Trace trace_;
  GlobalState initial_;
  std::vector<AState> choices_;
};

/// All runs of `system` over `t` starting at `s0`. Enumeration branches on
/// the δ choice of every event along the id linearization; each choice
/// vector is a distinct run and vice versa.
inline std::vector<TraceRun> trace_runs(const AsyncTransitionSystem& system, const Trace& t,
                                        const GlobalState& s0, std::size_t cap = 1'000'000) {
  if (!system.valid_state(s0))
    throw InitialStateMismatchError("initial state is not a global state of the system");
  std::vector<TraceRun> out;
  std::vector<AState> choices(t.size());
  const auto& alpha = t.alphabet();

  std::function<void(int, GlobalState)> go = [&](int e, GlobalState s) {
    if (e == t.size()) {
      if (out.size() >= cap) throw ExplosionCapError("trace run enumeration exceeded cap", cap);
      out.emplace_back(t, s0, choices);
      return;
    }
    ActionId a = t.label(e);
    const auto& procs = alpha.loc(a);
    for (const AState& tgt : system.targets(a, system.restrict_to(s, a))) {
      choices[e] = tgt;
      GlobalState ns = s;
      for (std::size_t k = 0; k < procs.size(); ++k) ns[procs[k]] = tgt[k];
      go(e + 1, std::move(ns));
    }
  };
  go(0, s0);
  return out;
}

} // namespace atsg

#endif
