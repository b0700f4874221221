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

#ifndef ATSG_GAME_FILE_HPP
#define ATSG_GAME_FILE_HPP

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "atsg/asyn_game.hpp"
#include "atsg/game.hpp"
#include "atsg/strategy.hpp"

namespace atsg {

using ParsedGame = std::variant<Game, AsynGame>;

namespace detail {

struct Token {
  std::string text;
  int column; // 1-based
};

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '+' ||
         c == '@' || c == '\'';
}

/// Splits a line into identifiers, single punctuation marks and "->".
/// A '#' ends the line (comment).
inline std::vector<Token> tokenize_line(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"->", col});
      i += 2;
      continue;
    }
    if (c == '(' || c == ')' || c == '{' || c == '}' || c == ',' || c == ':' || c == '=') {
      out.push_back({std::string(1, c), col});
      ++i;
      continue;
    }
    if (!ident_char(c))
      throw ParseError(lineno, col, std::string("unexpected character '") + c + "'");
    std::size_t j = i;
    while (j < line.size() && ident_char(line[j])) ++j;
    out.push_back({line.substr(i, j - i), col});
    i = j;
  }
  return out;
}

/// Cursor over one tokenized line.
struct LineCursor {
  const std::vector<Token>& toks;
  int lineno;
  std::size_t pos = 0;

  bool done() const { return pos >= toks.size(); }
  const Token& peek() const {
    if (done()) throw ParseError(lineno, last_col(), "unexpected end of line");
    return toks[pos];
  }
  Token next() {
    const Token& t = peek();
    ++pos;
    return t;
  }
  void expect(const std::string& text) {
    const Token& t = peek();
    if (t.text != text)
      throw ParseError(lineno, t.column, "expected '" + text + "', found '" + t.text + "'");
    ++pos;
  }
  void expect_end() {
    if (!done())
      throw ParseError(lineno, toks[pos].column, "trailing input '" + toks[pos].text + "'");
  }
  int last_col() const { return toks.empty() ? 1 : toks.back().column + 1; }

  std::string ident(const char* what) {
    const Token& t = peek();
    if (t.text.size() == 1 && !ident_char(t.text[0]))
      throw ParseError(lineno, t.column, std::string("expected ") + what);
    if (t.text == "->") throw ParseError(lineno, t.column, std::string("expected ") + what);
    ++pos;
    return t.text;
  }

  std::vector<std::string> tuple(const char* what) {
    std::vector<std::string> names;
    expect("(");
    if (!done() && peek().text == ")") {
      ++pos;
      return names;
    }
    names.push_back(ident(what));
    while (peek().text == ",") {
      ++pos;
      names.push_back(ident(what));
    }
    expect(")");
    return names;
  }
};

struct RawGameFile {
  int processes_line = 0;
  std::vector<std::string> processes;
  std::vector<std::tuple<int, std::string, std::vector<std::string>>> alphabet; // line, action, procs
  std::map<std::string, std::pair<int, std::vector<std::string>>> states;       // proc -> line, names
  int initial_line = 0;
  std::vector<std::string> initial;
  std::vector<std::tuple<int, std::string, std::vector<std::string>, std::vector<std::string>>>
      transitions; // line, action, from, to
  int condition_line = 0;
  bool condition_safety = true;
  std::vector<std::pair<int, std::vector<std::string>>> condition_states;
  std::optional<std::pair<int, std::vector<std::string>>> controllable;
  std::optional<std::pair<int, std::vector<std::string>>> uncontrollable;
};

} // namespace detail

/**
 * Parses the line-oriented game file format. The result is an AsynGame
 * exactly when a `partition` section is present, otherwise a Game.
 * Rejections carry the offending line and column.
 */
inline ParsedGame parse_game(const std::string& text) {
  detail::RawGameFile raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize_line(line, lineno);
    if (toks.empty()) continue;
    any = true;
    detail::LineCursor cur{toks, lineno};
    std::string section = cur.ident("section keyword");
    if (section == "processes") {
      if (raw.processes_line)
        throw ParseError(lineno, toks[0].column, "duplicate processes section");
      raw.processes_line = lineno;
      while (!cur.done()) raw.processes.push_back(cur.ident("process name"));
      if (raw.processes.empty())
        throw ParseError(lineno, cur.last_col(), "at least one process required");
    } else if (section == "alphabet") {
      std::string action = cur.ident("action name");
      cur.expect(":");
      std::vector<std::string> procs;
      while (!cur.done()) procs.push_back(cur.ident("process name"));
      if (procs.empty())
        throw ParseError(lineno, cur.last_col(),
                         "action \"" + action + "\" must name at least one process");
      raw.alphabet.emplace_back(lineno, action, procs);
    } else if (section == "states") {
      std::string proc = cur.ident("process name");
      cur.expect(":");
      std::vector<std::string> names;
      while (!cur.done()) names.push_back(cur.ident("state name"));
      if (names.empty())
        throw ParseError(lineno, cur.last_col(), "process \"" + proc + "\" needs states");
      for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
          if (names[i] == names[j])
            throw ParseError(lineno, toks[0].column,
                             "duplicate state \"" + names[i] + "\" for \"" + proc + "\"");
      if (!raw.states.emplace(proc, std::make_pair(lineno, names)).second)
        throw ParseError(lineno, toks[0].column, "duplicate states section for \"" + proc + "\"");
    } else if (section == "initial") {
      if (raw.initial_line) throw ParseError(lineno, toks[0].column, "duplicate initial section");
      raw.initial_line = lineno;
      raw.initial = cur.tuple("state name");
      cur.expect_end();
    } else if (section == "transitions") {
      std::string action = cur.ident("action name");
      cur.expect(":");
      auto from = cur.tuple("state name");
      cur.expect("->");
      auto to = cur.tuple("state name");
      cur.expect_end();
      raw.transitions.emplace_back(lineno, action, from, to);
    } else if (section == "condition") {
      if (raw.condition_line)
        throw ParseError(lineno, toks[0].column, "duplicate condition section");
      raw.condition_line = lineno;
      std::string kind = cur.ident("condition kind");
      if (kind == "safety") {
        raw.condition_safety = true;
        cur.expect("unsafe");
      } else if (kind == "reach") {
        raw.condition_safety = false;
        cur.expect("target");
      } else {
        throw ParseError(lineno, toks[1].column, "condition kind must be 'safety' or 'reach'");
      }
      cur.expect("=");
      cur.expect("{");
      if (cur.peek().text != "}") {
        raw.condition_states.emplace_back(lineno, cur.tuple("state name"));
        while (cur.peek().text == ",") {
          cur.next();
          raw.condition_states.emplace_back(lineno, cur.tuple("state name"));
        }
      }
      cur.expect("}");
      cur.expect_end();
    } else if (section == "partition") {
      std::string kind = cur.ident("partition kind");
      cur.expect(":");
      std::vector<std::string> actions;
      while (!cur.done()) actions.push_back(cur.ident("action name"));
      if (kind == "controllable") {
        if (raw.controllable)
          throw ParseError(lineno, toks[0].column, "duplicate controllable partition");
        raw.controllable = {lineno, actions};
      } else if (kind == "uncontrollable") {
        if (raw.uncontrollable)
          throw ParseError(lineno, toks[0].column, "duplicate uncontrollable partition");
        raw.uncontrollable = {lineno, actions};
      } else {
        throw ParseError(lineno, toks[1].column,
                         "partition kind must be 'controllable' or 'uncontrollable'");
      }
    } else {
      throw ParseError(lineno, toks[0].column, "unknown section \"" + section + "\"");
    }
  }
  if (!any) throw ParseError(1, 1, "empty game file");
  if (!raw.processes_line) throw ParseError(lineno ? lineno : 1, 1, "missing processes section");

  // Resolve the alphabet.
  std::vector<std::vector<std::string>> local_actions(raw.processes.size());
  std::set<std::string> declared_actions;
  for (const auto& [ln, action, procs] : raw.alphabet) {
    if (!declared_actions.insert(action).second)
      throw ParseError(ln, 1, "action \"" + action + "\" declared twice");
    for (const auto& pn : procs) {
      auto it = std::find(raw.processes.begin(), raw.processes.end(), pn);
      if (it == raw.processes.end())
        throw ParseError(ln, 1, "unknown process \"" + pn + "\" for action \"" + action + "\"");
      local_actions[it - raw.processes.begin()].push_back(action);
    }
  }
  AlphabetRef alpha;
  try {
    alpha = make_alphabet(raw.processes, local_actions);
  } catch (const Error& e) {
    throw ParseError(raw.processes_line, 1, e.what());
  }

  // Resolve the state spaces.
  std::vector<std::vector<std::string>> state_names(raw.processes.size());
  for (std::size_t p = 0; p < raw.processes.size(); ++p) {
    auto it = raw.states.find(raw.processes[p]);
    if (it == raw.states.end())
      throw ParseError(lineno ? lineno : 1, 1,
                       "missing states section for process \"" + raw.processes[p] + "\"");
    state_names[p] = it->second.second;
  }
  for (const auto& [proc, entry] : raw.states)
    if (!alpha->process_index(proc))
      throw ParseError(entry.first, 1, "states for unknown process \"" + proc + "\"");

  AsyncTransitionSystem system(alpha, state_names);

  auto resolve_action = [&](int ln, const std::string& name) -> ActionId {
    auto a = alpha->action_index(name);
    if (!a) throw ParseError(ln, 1, "unknown action \"" + name + "\"");
    return *a;
  };
  auto resolve_astate = [&](int ln, ActionId a, const std::vector<std::string>& names) -> AState {
    const auto& procs = alpha->loc(a);
    if (names.size() != procs.size())
      throw ParseError(ln, 1,
                       "action \"" + alpha->action_name(a) + "\" takes " +
                           std::to_string(procs.size()) + " state(s), got " +
                           std::to_string(names.size()));
    AState st;
    for (std::size_t k = 0; k < procs.size(); ++k) {
      auto idx = system.local_state_index(procs[k], names[k]);
      if (!idx)
        throw ParseError(ln, 1,
                         "unknown state \"" + names[k] + "\" of process " +
                             alpha->process_name(procs[k]));
      st.push_back(*idx);
    }
    return st;
  };
  auto resolve_global = [&](int ln, const std::vector<std::string>& names) -> GlobalState {
    if (names.size() != static_cast<std::size_t>(alpha->process_count()))
      throw ParseError(ln, 1,
                       "state tuple needs " + std::to_string(alpha->process_count()) +
                           " entries (one per process, in declaration order)");
    std::vector<int> locals;
    for (std::size_t p = 0; p < names.size(); ++p) {
      auto idx = system.local_state_index(static_cast<ProcessId>(p), names[p]);
      if (!idx)
        throw ParseError(ln, 1,
                         "unknown state \"" + names[p] + "\" of process " +
                             alpha->process_name(static_cast<ProcessId>(p)));
      locals.push_back(*idx);
    }
    return GlobalState(std::move(locals));
  };

  for (const auto& [ln, action, from, to] : raw.transitions) {
    ActionId a = resolve_action(ln, action);
    system.add_transition(a, resolve_astate(ln, a, from), resolve_astate(ln, a, to));
  }

  if (!raw.initial_line) throw ParseError(lineno ? lineno : 1, 1, "missing initial section");
  GlobalState initial = resolve_global(raw.initial_line, raw.initial);

  if (!raw.condition_line) throw ParseError(lineno ? lineno : 1, 1, "missing condition section");
  std::set<GlobalState> cond_states;
  for (const auto& [ln, names] : raw.condition_states) cond_states.insert(resolve_global(ln, names));
  WinningCondition condition = raw.condition_safety
                                   ? WinningCondition::safety(std::move(cond_states))
                                   : WinningCondition::reachability(std::move(cond_states));

  if (!raw.controllable && !raw.uncontrollable)
    return Game(std::move(system), std::move(initial), std::move(condition));

  // Partition present: build an asynchronous game.
  std::vector<int> seen(alpha->action_count(), 0); // 0 unseen, 1 ctrl, 2 env
  std::vector<bool> controllable(alpha->action_count(), false);
  auto absorb = [&](const std::optional<std::pair<int, std::vector<std::string>>>& entry,
                    bool ctrl) {
    if (!entry) return;
    for (const auto& name : entry->second) {
      ActionId a = resolve_action(entry->first, name);
      if (seen[a])
        throw ParseError(entry->first, 1, "action \"" + name + "\" partitioned twice");
      seen[a] = ctrl ? 1 : 2;
      controllable[a] = ctrl;
    }
  };
  absorb(raw.controllable, true);
  absorb(raw.uncontrollable, false);
  for (ActionId a = 0; a < alpha->action_count(); ++a)
    if (!seen[a]) {
      int ln = raw.controllable ? raw.controllable->first : raw.uncontrollable->first;
      throw ParseError(ln, 1,
                       "action \"" + alpha->action_name(a) +
                           "\" is in neither partition (list it as controllable or "
                           "uncontrollable)");
    }
  int part_line = raw.controllable ? raw.controllable->first : raw.uncontrollable->first;
  try {
    return AsynGame(std::move(system), std::move(controllable), std::move(initial),
                    std::move(condition));
  } catch (const Error& e) {
    throw ParseError(part_line, 1, e.what());
  }
}

// -- canonical printing --------------------------------------------------------

namespace detail {

inline void print_common(std::ostream& os, const AsyncTransitionSystem& sys,
                         const GlobalState& initial, const WinningCondition& cond,
                         const std::vector<bool>* controllable) {
  const auto& alpha = sys.alphabet();
  os << "# state tuples list processes in declaration order:";
  for (const auto& p : alpha.process_names()) os << ' ' << p;
  os << '\n';
  os << "processes";
  for (const auto& p : alpha.process_names()) os << ' ' << p;
  os << '\n';
  for (ActionId a = 0; a < alpha.action_count(); ++a) {
    os << "alphabet " << alpha.action_name(a) << ":";
    for (ProcessId p : alpha.loc(a)) os << ' ' << alpha.process_name(p);
    os << '\n';
  }
  if (controllable) {
    os << "partition controllable:";
    for (ActionId a = 0; a < alpha.action_count(); ++a)
      if ((*controllable)[a]) os << ' ' << alpha.action_name(a);
    os << '\n';
    os << "partition uncontrollable:";
    for (ActionId a = 0; a < alpha.action_count(); ++a)
      if (!(*controllable)[a]) os << ' ' << alpha.action_name(a);
    os << '\n';
  }
  for (ProcessId p = 0; p < alpha.process_count(); ++p) {
    os << "states " << alpha.process_name(p) << ":";
    for (int s = 0; s < sys.local_state_count(p); ++s) os << ' ' << sys.local_state_name(p, s);
    os << '\n';
  }
  os << "initial " << sys.state_to_string(initial) << '\n';
  for (ActionId a = 0; a < alpha.action_count(); ++a)
    for (const auto& [from, to] : sys.transitions(a))
      os << "transitions " << alpha.action_name(a) << ": " << sys.astate_to_string(a, from)
         << " -> " << sys.astate_to_string(a, to) << '\n';
  os << "condition " << (cond.is_safety() ? "safety unsafe" : "reach target") << " = {";
  bool first = true;
  for (const auto& s : cond.states()) {
    if (!first) os << ", ";
    os << sys.state_to_string(s);
    first = false;
  }
  os << "}\n";
}

} // namespace detail

inline std::string print_game(const Game& game) {
  std::ostringstream os;
  detail::print_common(os, game.system, game.initial, game.condition, nullptr);
  return os.str();
}

inline std::string print_game(const AsynGame& game) {
  std::ostringstream os;
  detail::print_common(os, game.automaton, game.initial, game.condition, &game.controllable);
  return os.str();
}

inline std::string print_game(const ParsedGame& game) {
  return std::holds_alternative<Game>(game) ? print_game(std::get<Game>(game))
                                            : print_game(std::get<AsynGame>(game));
}

// -- strategy files --------------------------------------------------------------

/**
 * Parses a distributed strategy: one response per line,
 * `prime-trace-word -> (a-state)`. Words are canonicalized on input; the
 * a-state tuple follows loc order of the word's maximal action.
 */
inline DistributedStrategy parse_strategy(const std::string& text, const Game& game) {
  DistributedStrategy out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  const auto& alpha = game.system.alphabet();
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize_line(line, lineno);
    if (toks.empty()) continue;
    detail::LineCursor cur{toks, lineno};
    std::vector<ActionId> word;
    while (cur.peek().text != "->") {
      const auto& t = cur.next();
      auto a = alpha.action_index(t.text);
      if (!a) throw ParseError(lineno, t.column, "unknown action \"" + t.text + "\"");
      word.push_back(*a);
    }
    cur.expect("->");
    if (word.empty()) throw ParseError(lineno, 1, "empty prime trace");
    Trace t = Trace::from_word(game.system.alphabet_ref(), word);
    if (static_cast<int>(t.prime_of(t.size() - 1).size()) != t.size())
      throw ParseError(lineno, 1, "word is not a prime trace (no unique maximal event)");
    PrimeKey key = t.canonical_form();
    ActionId a = key.back();
    auto names = cur.tuple("state name");
    cur.expect_end();
    const auto& procs = alpha.loc(a);
    if (names.size() != procs.size())
      throw ParseError(lineno, 1,
                       "a-state for action \"" + alpha.action_name(a) + "\" needs " +
                           std::to_string(procs.size()) + " entries");
    AState st;
    for (std::size_t k = 0; k < procs.size(); ++k) {
      auto idx = game.system.local_state_index(procs[k], names[k]);
      if (!idx)
        throw ParseError(lineno, 1,
                         "unknown state \"" + names[k] + "\" of process " +
                             alpha.process_name(procs[k]));
      st.push_back(*idx);
    }
    if (!out.responses.emplace(std::move(key), std::move(st)).second)
      throw ParseError(lineno, 1, "duplicate response for this prime trace");
  }
  return out;
}

/// Parses a sequential strategy: lines `(state) action -> (state)`.
inline SequentialStrategy parse_sequential_strategy(const std::string& text, const Game& game) {
  SequentialStrategy out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  const auto& alpha = game.system.alphabet();
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize_line(line, lineno);
    if (toks.empty()) continue;
    detail::LineCursor cur{toks, lineno};
    auto resolve = [&](const std::vector<std::string>& names) -> GlobalState {
      if (names.size() != static_cast<std::size_t>(alpha.process_count()))
        throw ParseError(lineno, 1, "state tuple arity mismatch");
      std::vector<int> locals;
      for (std::size_t p = 0; p < names.size(); ++p) {
        auto idx = game.system.local_state_index(static_cast<ProcessId>(p), names[p]);
        if (!idx) throw ParseError(lineno, 1, "unknown state \"" + names[p] + "\"");
        locals.push_back(*idx);
      }
      return GlobalState(std::move(locals));
    };
    GlobalState from = resolve(cur.tuple("state name"));
    const auto& at = cur.next();
    auto a = alpha.action_index(at.text);
    if (!a) throw ParseError(lineno, at.column, "unknown action \"" + at.text + "\"");
    cur.expect("->");
    GlobalState to = resolve(cur.tuple("state name"));
    cur.expect_end();
    if (!out.choice.emplace(std::make_pair(std::move(from), *a), std::move(to)).second)
      throw ParseError(lineno, 1, "duplicate choice for this state and action");
  }
  return out;
}

} // namespace atsg

#endif
