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

#ifndef ATSG_ALPHABET_HPP
#define ATSG_ALPHABET_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atsg/errors.hpp"

namespace atsg {

using ProcessId = int;
using ActionId = int;

/**
 * A distributed alphabet: an ordered set of processes, each with a finite
 * set of local actions. An action may belong to several processes; its
 * location loc(a) is the set of processes sharing it. Two actions are
 * independent iff their locations are disjoint.
 *
 * Action identifiers are indices into the alphabetically sorted action list,
 * so iterating actions by id is the canonical order used everywhere else.
 */
class DistributedAlphabet {
public:
  /// `local_actions[i]` lists the action names of process `processes[i]`.
  DistributedAlphabet(std::vector<std::string> processes,
                      std::vector<std::vector<std::string>> local_actions) {
    if (processes.size() != local_actions.size())
      throw Error("alphabet: one action list per process required");
    if (processes.empty())
      throw Error("alphabet: at least one process required");
    processes_ = std::move(processes);
    for (std::size_t i = 0; i < processes_.size(); ++i)
      for (std::size_t j = i + 1; j < processes_.size(); ++j)
        if (processes_[i] == processes_[j])
          throw Error("alphabet: duplicate process name \"" + processes_[i] + "\"");

    std::map<std::string, std::vector<ProcessId>> by_name;
    for (std::size_t i = 0; i < local_actions.size(); ++i) {
      for (const auto& name : local_actions[i]) {
        auto& locs = by_name[name];
        if (!locs.empty() && locs.back() == static_cast<ProcessId>(i))
          throw Error("alphabet: action \"" + name + "\" listed twice for process " +
                      processes_[i]);
        locs.push_back(static_cast<ProcessId>(i));
      }
    }
    // std::map iteration gives the alphabetical (canonical) action order.
    for (auto& [name, locs] : by_name) {
      actions_.push_back(name);
      locs_.push_back(locs);
    }
    per_process_.resize(processes_.size());
    for (ActionId a = 0; a < action_count(); ++a)
      for (ProcessId p : locs_[a])
        per_process_[p].push_back(a);

    dependent_.assign(actions_.size(), std::vector<bool>(actions_.size(), false));
    for (ActionId a = 0; a < action_count(); ++a)
      for (ActionId b = 0; b < action_count(); ++b) {
        const auto& la = locs_[a];
        const auto& lb = locs_[b];
        bool share = std::find_first_of(la.begin(), la.end(), lb.begin(), lb.end()) != la.end();
        dependent_[a][b] = share;
      }
  }

  int process_count() const { return static_cast<int>(processes_.size()); }
  int action_count() const { return static_cast<int>(actions_.size()); }

  const std::string& process_name(ProcessId p) const { return processes_.at(p); }
  const std::string& action_name(ActionId a) const { return actions_.at(a); }
  const std::vector<std::string>& process_names() const { return processes_; }
  const std::vector<std::string>& action_names() const { return actions_; }

  std::optional<ProcessId> process_index(std::string_view name) const {
    for (std::size_t i = 0; i < processes_.size(); ++i)
      if (processes_[i] == name) return static_cast<ProcessId>(i);
    return std::nullopt;
  }

  std::optional<ActionId> action_index(std::string_view name) const {
    auto it = std::lower_bound(actions_.begin(), actions_.end(), name);
    if (it == actions_.end() || *it != name) return std::nullopt;
    return static_cast<ActionId>(it - actions_.begin());
  }

  /// Sorted process ids sharing action `a`; never empty.
  const std::vector<ProcessId>& loc(ActionId a) const { return locs_.at(a); }

  /// Sorted action ids of process `p` (the local alphabet).
  const std::vector<ActionId>& actions_of(ProcessId p) const { return per_process_.at(p); }

  bool participates(ProcessId p, ActionId a) const {
    const auto& l = locs_.at(a);
    return std::binary_search(l.begin(), l.end(), p);
  }

  bool dependent(ActionId a, ActionId b) const { return dependent_.at(a).at(b); }
  bool independent(ActionId a, ActionId b) const { return !dependent(a, b); }

  /// Position of process `p` inside loc(a), for indexing a-states.
  int loc_slot(ActionId a, ProcessId p) const {
    const auto& l = locs_.at(a);
    auto it = std::lower_bound(l.begin(), l.end(), p);
    if (it == l.end() || *it != p)
      throw Error("process " + process_name(p) + " does not participate in action " +
                  action_name(a));
    return static_cast<int>(it - l.begin());
  }

  bool operator==(const DistributedAlphabet& other) const {
    return processes_ == other.processes_ && actions_ == other.actions_ && locs_ == other.locs_;
  }
  bool operator!=(const DistributedAlphabet& other) const { return !(*this == other); }

private:
  std::vector<std::string> processes_;
  std::vector<std::string> actions_; // sorted by name
  std::vector<std::vector<ProcessId>> locs_;
  std::vector<std::vector<ActionId>> per_process_;
  std::vector<std::vector<bool>> dependent_;
};

using AlphabetRef = std::shared_ptr<const DistributedAlphabet>;

inline AlphabetRef make_alphabet(std::vector<std::string> processes,
                                 std::vector<std::vector<std::string>> local_actions) {
  return std::make_shared<const DistributedAlphabet>(std::move(processes),
                                                     std::move(local_actions));
}

} // namespace atsg

#endif
