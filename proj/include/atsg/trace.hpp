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

#ifndef ATSG_TRACE_HPP
#define ATSG_TRACE_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "atsg/alphabet.hpp"
#include "atsg/errors.hpp"

namespace atsg {

/// One occurrence of an action inside a trace. Ids are generation indices
/// and only meaningful within their owning trace.
struct Event {
  int id;
  ActionId action;

  bool operator==(const Event& o) const { return id == o.id && action == o.action; }
};

/**
 * A down-closed set of event ids of some trace, kept sorted. The owning
 * trace is passed explicitly to the operations that need the order, so a
 * Configuration is a plain value that can be copied and used as a map key.
 */
class Configuration {
public:
  Configuration() = default;

  static Configuration from_ids(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    Configuration c;
    c.ids_ = std::move(ids);
    return c;
  }

  const std::vector<int>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  bool contains(int id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

  Configuration with(int id) const {
    Configuration c = *this;
    auto it = std::lower_bound(c.ids_.begin(), c.ids_.end(), id);
    if (it == c.ids_.end() || *it != id) c.ids_.insert(it, id);
    return c;
  }

  bool operator==(const Configuration& o) const { return ids_ == o.ids_; }
  bool operator!=(const Configuration& o) const { return !(*this == o); }
  bool operator<(const Configuration& o) const { return ids_ < o.ids_; }

private:
  std::vector<int> ids_;
};

/**
 * A Mazurkiewicz trace: a finite set of events labeled with alphabet
 * actions, partially ordered so that dependent labels are always comparable.
 * Only the covering relation is stored (transitively reduced); the partial
 * order is kept as per-event down-sets for O(1) comparisons.
 *
 * Traces are immutable values. Growing one with append() produces a new
 * trace whose event ids extend the old ones, so ids form a linearization.
 * Equality is structural: same alphabet and same canonical form. Event ids
 * never take part in equality.
 */
class Trace {
public:
  explicit Trace(AlphabetRef alphabet) : alphabet_(std::move(alphabet)) {
    last_of_process_.assign(alphabet_->process_count(), -1);
  }

  /// Builds the trace whose linearizations include `word`.
  static Trace from_word(AlphabetRef alphabet, const std::vector<ActionId>& word) {
    Trace t(std::move(alphabet));
    for (ActionId a : word) t.append_in_place(a);
    return t;
  }

  static Trace from_word_names(AlphabetRef alphabet, const std::vector<std::string>& names) {
    Trace t(std::move(alphabet));
    for (const auto& name : names) {
      auto a = t.alphabet_->action_index(name);
      if (!a) throw UnknownActionError("unknown action \"" + name + "\"");
      t.append_in_place(*a);
    }
    return t;
  }

  const DistributedAlphabet& alphabet() const { return *alphabet_; }
  const AlphabetRef& alphabet_ref() const { return alphabet_; }

  int size() const { return static_cast<int>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  ActionId label(int id) const { return labels_.at(id); }
  Event event(int id) const { return Event{id, labels_.at(id)}; }

  const std::vector<int>& covering_successors(int id) const { return cov_succ_.at(id); }
  const std::vector<int>& covering_predecessors(int id) const { return cov_pred_.at(id); }

  /// e ≤ f in the trace order.
  bool leq(int e, int f) const { return e <= f && down_.at(f).at(e); }

  /// Extends the trace with one maximal `a`-labeled event.
  std::pair<Trace, Event> append(ActionId a) const {
    Trace t = *this;
    int id = t.append_in_place(a);
    return {std::move(t), Event{id, a}};
  }

  // -- linearizations ------------------------------------------------------

  /// Event ids in the lexicographically least linearization order
  /// (alphabetical on action names).
  std::vector<int> canonical_order() const {
    std::vector<int> indeg(size());
    for (int e = 0; e < size(); ++e) indeg[e] = static_cast<int>(cov_pred_[e].size());
    // Minimal events are pairwise independent, hence carry distinct labels;
    // picking the least label is unambiguous.
    std::set<std::pair<std::string, int>> ready;
    for (int e = 0; e < size(); ++e)
      if (indeg[e] == 0) ready.insert({alphabet_->action_name(labels_[e]), e});
    std::vector<int> order;
    order.reserve(labels_.size());
    while (!ready.empty()) {
      auto [name, e] = *ready.begin();
      ready.erase(ready.begin());
      order.push_back(e);
      for (int f : cov_succ_[e])
        if (--indeg[f] == 0) ready.insert({alphabet_->action_name(labels_[f]), f});
    }
    return order;
  }

  /// Lexicographically least linearization; equal traces agree on it.
  std::vector<ActionId> canonical_form() const {
    std::vector<ActionId> word;
    word.reserve(labels_.size());
    for (int e : canonical_order()) word.push_back(labels_[e]);
    return word;
  }

  /// Canonical form rendered with action names, space separated.
  std::string canonical_word() const {
    std::ostringstream os;
    bool first = true;
    for (ActionId a : canonical_form()) {
      if (!first) os << ' ';
      os << alphabet_->action_name(a);
      first = false;
    }
    return os.str();
  }

  bool operator==(const Trace& o) const {
    if (alphabet_ != o.alphabet_ && *alphabet_ != *o.alphabet_) return false;
    return canonical_form() == o.canonical_form();
  }
  bool operator!=(const Trace& o) const { return !(*this == o); }

  // -- configurations ------------------------------------------------------

  Configuration full_configuration() const {
    std::vector<int> ids(labels_.size());
    for (int e = 0; e < size(); ++e) ids[e] = e;
    return Configuration::from_ids(std::move(ids));
  }

  Configuration down_closure(const std::vector<int>& ids) const {
    std::vector<bool> mark(labels_.size(), false);
    std::vector<int> out;
    std::deque<int> work(ids.begin(), ids.end());
    while (!work.empty()) {
      int e = work.front();
      work.pop_front();
      if (e < 0 || e >= size()) throw Error("event id out of range");
      if (mark[e]) continue;
      mark[e] = true;
      out.push_back(e);
      for (int f : cov_pred_[e]) work.push_back(f);
    }
    return Configuration::from_ids(std::move(out));
  }

  bool is_configuration(const Configuration& c) const {
    for (int e : c.ids()) {
      if (e < 0 || e >= size()) return false;
      for (int f : cov_pred_[e])
        if (!c.contains(f)) return false;
    }
    return true;
  }

  /// ↓e, the causal past of `e` including `e` itself. Always prime.
  Configuration prime_of(int event_id) const { return down_closure({event_id}); }

  /// All down-closed subsets, found by BFS over the successor relation.
  std::vector<Configuration> configurations(
      std::size_t cap = std::numeric_limits<std::size_t>::max()) const {
    std::set<Configuration> seen;
    std::deque<Configuration> work;
    work.push_back(Configuration());
    seen.insert(Configuration());
    while (!work.empty()) {
      Configuration c = std::move(work.front());
      work.pop_front();
      for (auto& [e, succ] : event_successors(c)) {
        (void)e;
        if (seen.insert(succ).second) {
          if (seen.size() > cap)
            throw ExplosionCapError("configuration enumeration exceeded cap", cap);
          work.push_back(std::move(succ));
        }
      }
    }
    return {seen.begin(), seen.end()};
  }

  /// Events addable to `c`, paired with the extended configuration.
  std::vector<std::pair<Event, Configuration>> event_successors(const Configuration& c) const {
    std::vector<std::pair<Event, Configuration>> out;
    for (int e = 0; e < size(); ++e) {
      if (c.contains(e)) continue;
      bool enabled = true;
      for (int f : cov_pred_[e])
        if (!c.contains(f)) {
          enabled = false;
          break;
        }
      if (enabled) out.emplace_back(event(e), c.with(e));
    }
    return out;
  }

  std::vector<Configuration> action_successors(const Configuration& c, ActionId a) const {
    std::vector<Configuration> out;
    for (auto& [e, succ] : event_successors(c))
      if (e.action == a) out.push_back(succ);
    return out;
  }

  // -- views ----------------------------------------------------------------

  /// Last event of `c` in which process `i` participates, if any.
  std::optional<Event> max_event(const Configuration& c, ProcessId i) const {
    // Ids extend the trace order and i-events are totally ordered, so the
    // largest participating id is the order-maximum.
    for (auto it = c.ids().rbegin(); it != c.ids().rend(); ++it)
      if (alphabet_->participates(i, labels_[*it])) return event(*it);
    return std::nullopt;
  }

  /// ↓ⁱ(c): what process `i` knows once `c` has happened.
  Configuration i_view(const Configuration& c, ProcessId i) const {
    auto m = max_event(c, i);
    if (!m) return Configuration();
    return prime_of(m->id);
  }

  /// Collective knowledge of a set of processes: the union of their views.
  Configuration p_view(const Configuration& c, const std::vector<ProcessId>& processes) const {
    std::vector<int> ids;
    for (ProcessId i : processes) {
      auto m = max_event(c, i);
      if (m) ids.push_back(m->id);
    }
    return down_closure(ids);
  }

  // -- restriction ----------------------------------------------------------

  /// The trace induced by configuration `c` (ids are renumbered).
  Trace subtrace(const Configuration& c) const {
    std::vector<ActionId> word;
    word.reserve(c.size());
    for (int e : c.ids()) word.push_back(labels_[e]); // ascending ids linearize c
    return from_word(alphabet_, word);
  }

private:
  int append_in_place(ActionId a) {
    if (a < 0 || a >= alphabet_->action_count())
      throw UnknownActionError("action id " + std::to_string(a) + " outside alphabet");
    int id = size();
    // Covering candidates: the current last event of each participating
    // process dominates every earlier dependent event.
    std::vector<int> cands;
    for (ProcessId p : alphabet_->loc(a)) {
      int last = last_of_process_[p];
      if (last >= 0) cands.push_back(last);
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::vector<int> preds;
    for (int x : cands) {
      bool dominated = false;
      for (int y : cands)
        if (x != y && leq(x, y)) {
          dominated = true;
          break;
        }
      if (!dominated) preds.push_back(x);
    }

    labels_.push_back(a);
    cov_succ_.emplace_back();
    cov_pred_.push_back(preds);
    std::vector<bool> down(id + 1, false);
    down[id] = true;
    for (int p : preds) {
      cov_succ_[p].push_back(id);
      const auto& dp = down_[p];
      for (int e = 0; e <= p; ++e)
        if (dp[e]) down[e] = true;
    }
    down_.push_back(std::move(down));
    for (ProcessId p : alphabet_->loc(a)) last_of_process_[p] = id;
    return id;
  }

  AlphabetRef alphabet_;
  std::vector<ActionId> labels_;
  std::vector<std::vector<int>> cov_succ_;
  std::vector<std::vector<int>> cov_pred_;
  std::vector<std::vector<bool>> down_; // down_[e] has size e+1
  std::vector<int> last_of_process_;
};

inline Trace trace_from_word(AlphabetRef alphabet, const std::vector<ActionId>& word) {
  return Trace::from_word(std::move(alphabet), word);
}

} // namespace atsg

#endif
