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

#ifndef ATSG_DOT_HPP
#define ATSG_DOT_HPP

#include <sstream>
#include <string>

#include "atsg/game.hpp"

namespace atsg {

/// Hasse diagram of a trace: events as "id:action" nodes, covering edges.
inline std::string trace_to_dot(const Trace& t) {
  std::ostringstream os;
  os << "digraph trace {\n  rankdir=LR;\n";
  for (int e = 0; e < t.size(); ++e)
    os << "  e" << e << " [label=\"" << e << ":" << t.alphabet().action_name(t.label(e))
       << "\"];\n";
  for (int e = 0; e < t.size(); ++e)
    for (int f : t.covering_successors(e)) os << "  e" << e << " -> e" << f << ";\n";
  os << "}\n";
  return os.str();
}

/// Reachable global-state graph; one edge per non-deterministic choice.
inline std::string global_graph_to_dot(const AsyncTransitionSystem& sys,
                                       const GlobalState& initial,
                                       const WinningCondition* cond = nullptr,
                                       std::size_t cap = 100000) {
  std::ostringstream os;
  os << "digraph global {\n";
  std::set<GlobalState> seen;
  std::deque<GlobalState> work;
  std::vector<GlobalState> order;
  seen.insert(initial);
  work.push_back(initial);
  while (!work.empty()) {
    GlobalState s = std::move(work.front());
    work.pop_front();
    order.push_back(s);
    if (order.size() > cap) throw ExplosionCapError("dot export exceeded cap", cap);
    for (ActionId a : sys.enabled(s))
      for (const auto& t : sys.global_successors(s, a))
        if (seen.insert(t).second) work.push_back(t);
  }
  std::map<GlobalState, int> id;
  for (const auto& s : seen) id.emplace(s, static_cast<int>(id.size()));
  for (const auto& [s, i] : id) {
    os << "  s" << i << " [label=\"" << sys.state_to_string(s) << "\"";
    if (s == initial) os << ", shape=box";
    if (cond) {
      if (cond->is_safety() && !cond->safe(s)) os << ", style=filled, fillcolor=red";
      if (cond->in_target(s)) os << ", style=filled, fillcolor=green";
    }
    os << "];\n";
  }
  for (const auto& [s, i] : id)
    for (ActionId a = 0; a < sys.alphabet().action_count(); ++a)
      for (const auto& t : sys.global_successors(s, a))
        os << "  s" << i << " -> s" << id.at(t) << " [label=\"" << sys.alphabet().action_name(a)
           << "\"];\n";
  os << "}\n";
  return os.str();
}

} // namespace atsg

#endif
