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

#ifndef ATSG_CLI_HPP
#define ATSG_CLI_HPP

#include <algorithm>
#include <atomic>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atsg/dot.hpp"
#include "atsg/game_file.hpp"
#include "atsg/reduction.hpp"

namespace atsg {

/// Exit codes of the command-line surface.
enum ExitCode {
  ExitSystemWins = 0,
  ExitOk = 0,
  ExitUsage = 1,
  ExitCap = 2,
  ExitEnvironmentWins = 10,
  ExitUnknown = 20,
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file \"" + path + "\"");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::vector<std::string> split_schedule(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline int verdict_exit(VerdictKind k) {
  switch (k) {
    case VerdictKind::SystemWins: return ExitSystemWins;
    case VerdictKind::EnvironmentWins: return ExitEnvironmentWins;
    default: return ExitUnknown;
  }
}

inline const Game& require_ats(const ParsedGame& parsed, const char* command) {
  if (!std::holds_alternative<Game>(parsed))
    throw Error(std::string(command) +
                " expects an ATS game; run `reduce` on asynchronous game files first");
  return std::get<Game>(parsed);
}

inline void print_verdict_evidence(std::ostream& out, const Game& game, const Verdict& v) {
  if (v.kind == VerdictKind::SystemWins && v.strategy) {
    out << "winning strategy:\n";
    std::istringstream lines(strategy_to_text(game, *v.strategy));
    std::string l;
    while (std::getline(lines, l)) out << "  " << l << '\n';
  }
  if (v.kind == VerdictKind::EnvironmentWins) {
    if (v.refuted) {
      out << "refuted strategy:\n";
      std::istringstream lines(strategy_to_text(game, *v.refuted));
      std::string l;
      while (std::getline(lines, l)) out << "  " << l << '\n';
    }
    if (v.counterexample) {
      out << "counterexample play:\n";
      out << play_transcript(game, *v.counterexample);
    }
  }
  if (v.kind == VerdictKind::Unknown) out << "reason: " << v.reason << '\n';
}

} // namespace detail

/**
 * The command-line surface. `args` excludes the program name. Reports are
 * written to `out`, diagnostics to `err`. Returns the exit status: 0 for
 * success/SystemWins, 10 EnvironmentWins, 20 Unknown, 1 usage or parse
 * errors, 2 when a cap was hit.
 */
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"workbench for games on non-deterministic asynchronous transition systems"};
  app.require_subcommand(1);

  std::string file, strat_file, outfile, schedule, trace_word;
  int horizon = 0;
  std::size_t max_plays = 1'000'000;
  unsigned long seed = 0;
  int threads = 1;
  bool enumerate = false, global_graph = false;

  auto* validate = app.add_subcommand("validate", "parse and type-check a game file");
  validate->add_option("FILE", file)->required();

  auto* info = app.add_subcommand("info", "summary: sizes, completeness, enabled actions");
  info->add_option("FILE", file)->required();

  auto* solveseq = app.add_subcommand("solve-seq", "full-information solver and winning region");
  solveseq->add_option("FILE", file)->required();

  auto* solvedist = app.add_subcommand("solve-dist", "horizon-bounded distributed-strategy search");
  solvedist->add_option("FILE", file)->required();
  solvedist->add_option("--horizon", horizon, "event-count bound on plays")->required();
  solvedist->add_flag("--enumerate", enumerate, "enumerate and check every strategy table");
  solvedist->add_option("--max-plays", max_plays, "cap on explored plays");
  solvedist->add_option("--threads", threads, "worker threads for --enumerate checking");

  auto* reduce = app.add_subcommand("reduce", "compile an asynchronous game to an ATS game");
  reduce->add_option("FILE", file)->required();
  reduce->add_option("-o,--output", outfile, "output game file")->required();

  auto* check = app.add_subcommand("check-strategy", "verdict for a strategy file");
  check->add_option("FILE", file)->required();
  check->add_option("STRATEGY", strat_file)->required();
  check->add_option("--horizon", horizon)->required();
  check->add_option("--max-plays", max_plays);

  auto* simulate = app.add_subcommand("simulate", "play a schedule with random system choices");
  simulate->add_option("FILE", file)->required();
  simulate->add_option("--schedule", schedule, "actions, comma or space separated")->required();
  simulate->add_option("--seed", seed, "RNG seed for system choices");

  auto* exportdot = app.add_subcommand("export-dot", "DOT export of the global graph or a trace");
  exportdot->add_option("FILE", file)->required();
  exportdot->add_flag("--global-graph", global_graph, "reachable global-state graph (default)");
  exportdot->add_option("--trace", trace_word, "Hasse diagram of the trace of this word");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) { // --help
      out << app.help();
      return ExitOk;
    }
    err << "error: " << e.what() << '\n';
    return ExitUsage;
  }

  try {
    if (*validate) {
      ParsedGame parsed = parse_game(detail::read_file(file));
      out << "file: " << file << '\n';
      if (std::holds_alternative<Game>(parsed)) {
        const Game& g = std::get<Game>(parsed);
        out << "ok: ATS game\n";
        out << "processes: " << g.system.alphabet().process_count()
            << ", actions: " << g.system.alphabet().action_count() << '\n';
      } else {
        const AsynGame& g = std::get<AsynGame>(parsed);
        out << "ok: asynchronous game\n";
        out << "processes: " << g.automaton.alphabet().process_count()
            << ", actions: " << g.automaton.alphabet().action_count() << '\n';
      }
      return ExitOk;
    }

    if (*info) {
      ParsedGame parsed = parse_game(detail::read_file(file));
      const bool asyn = std::holds_alternative<AsynGame>(parsed);
      const AsyncTransitionSystem& sys =
          asyn ? std::get<AsynGame>(parsed).automaton : std::get<Game>(parsed).system;
      const GlobalState& initial =
          asyn ? std::get<AsynGame>(parsed).initial : std::get<Game>(parsed).initial;
      const WinningCondition& cond =
          asyn ? std::get<AsynGame>(parsed).condition : std::get<Game>(parsed).condition;
      const auto& alpha = sys.alphabet();
      out << "file: " << file << '\n';
      out << "kind: " << (asyn ? "asynchronous game" : "ATS game") << '\n';
      out << "processes:";
      for (const auto& p : alpha.process_names()) out << ' ' << p;
      out << '\n';
      for (ActionId a = 0; a < alpha.action_count(); ++a) {
        out << "action " << alpha.action_name(a) << ": loc =";
        for (ProcessId p : alpha.loc(a)) out << ' ' << alpha.process_name(p);
        out << ", transitions = " << sys.transition_count(a);
        if (asyn)
          out << (std::get<AsynGame>(parsed).controllable[a] ? ", controllable"
                                                             : ", uncontrollable");
        out << '\n';
      }
      for (ProcessId p = 0; p < alpha.process_count(); ++p)
        out << "states " << alpha.process_name(p) << ": " << sys.local_state_count(p) << '\n';
      out << "complete: " << (sys.is_complete() ? "yes" : "no") << '\n';
      out << "initial: " << sys.state_to_string(initial) << '\n';
      out << "enabled at initial:";
      for (ActionId a : sys.enabled(initial)) out << ' ' << alpha.action_name(a);
      out << '\n';
      out << "condition: " << (cond.is_safety() ? "safety, " : "reach, ") << cond.states().size()
          << (cond.is_safety() ? " unsafe state(s)" : " target state(s)") << '\n';
      return ExitOk;
    }

    if (*solveseq) {
      ParsedGame parsed = parse_game(detail::read_file(file));
      const Game& game = detail::require_ats(parsed, "solve-seq");
      auto [v, region] = solve_sequential(game);
      out << "file: " << file << '\n';
      out << "command: solve-seq\n";
      out << "verdict: " << to_string(v.kind) << '\n';
      out << "winning region (" << region.size() << " states):";
      for (const auto& s : region) out << ' ' << game.system.state_to_string(s);
      out << '\n';
      if (v.sequential) {
        out << "strategy:\n";
        std::istringstream lines(sequential_to_text(game, *v.sequential));
        std::string l;
        while (std::getline(lines, l)) out << "  " << l << '\n';
      }
      if (v.env_moves) {
        out << "environment moves:\n";
        for (const auto& [s, a] : *v.env_moves)
          out << "  " << game.system.state_to_string(s) << " "
              << game.system.alphabet().action_name(a) << '\n';
      }
      return detail::verdict_exit(v.kind);
    }

    if (*solvedist) {
      ParsedGame parsed = parse_game(detail::read_file(file));
      const Game& game = detail::require_ats(parsed, "solve-dist");
      out << "file: " << file << '\n';
      out << "command: solve-dist" << (enumerate ? " --enumerate" : "") << '\n';
      out << "horizon: " << horizon << '\n';
      out << "max-plays: " << max_plays << '\n';
      if (!enumerate) {
        Verdict v = solve_distributed(game, horizon, max_plays);
        out << "verdict: " << to_string(v.kind) << '\n';
        out << "strategies examined: " << v.strategies_examined << '\n';
        detail::print_verdict_evidence(out, game, v);
        return detail::verdict_exit(v.kind);
      }
      std::vector<DistributedStrategy> all;
      try {
        all = enumerate_distributed_strategies(game, horizon, max_plays);
      } catch (const TruncatedError& e) {
        out << "verdict: Unknown\n";
        out << "reason: " << e.what() << '\n';
        return ExitUnknown;
      }
      std::vector<Verdict> verdicts(all.size());
      if (threads > 1) {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
          for (std::size_t i = next++; i < all.size(); i = next++)
            verdicts[i] = is_winning_strategy(game, all[i], horizon, max_plays);
        };
        std::vector<std::future<void>> futs;
        for (int t = 0; t < threads; ++t) futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();
      } else {
        for (std::size_t i = 0; i < all.size(); ++i)
          verdicts[i] = is_winning_strategy(game, all[i], horizon, max_plays);
      }
      out << "strategies: " << all.size() << '\n';
      VerdictKind overall = all.empty() ? VerdictKind::SystemWins : VerdictKind::EnvironmentWins;
      bool any_unknown = false;
      for (std::size_t i = 0; i < all.size(); ++i) {
        out << "strategy " << (i + 1) << ":\n";
        std::istringstream lines(strategy_to_text(game, all[i]));
        std::string l;
        while (std::getline(lines, l)) out << "  " << l << '\n';
        out << "  verdict: " << to_string(verdicts[i].kind) << '\n';
        if (verdicts[i].kind == VerdictKind::EnvironmentWins && verdicts[i].counterexample) {
          out << "  losing play:\n";
          std::istringstream tl(play_transcript(game, *verdicts[i].counterexample));
          while (std::getline(tl, l)) out << "  " << l << '\n';
        }
        if (verdicts[i].kind == VerdictKind::SystemWins) overall = VerdictKind::SystemWins;
        if (verdicts[i].kind == VerdictKind::Unknown) any_unknown = true;
      }
      if (overall != VerdictKind::SystemWins && any_unknown) overall = VerdictKind::Unknown;
      out << "verdict: " << to_string(overall) << '\n';
      out << "strategies examined: " << all.size() << '\n';
      return detail::verdict_exit(overall);
    }

    if (*reduce) {
      ParsedGame parsed = parse_game(detail::read_file(file));
      if (!std::holds_alternative<AsynGame>(parsed))
        throw Error("reduce expects an asynchronous game (a file with a partition section)");
      Reduction red = build_ats_game(std::get<AsynGame>(parsed));
      std::ofstream os(outfile, std::ios::binary);
      if (!os) throw Error("cannot write file \"" + outfile + "\"");
      os << print_game(red.game);
      out << "file: " << file << '\n';
      out << "command: reduce\n";
      out << "output: " << outfile << '\n';
      out << "processes: " << red.game.system.alphabet().process_count()
          << ", actions: " << red.game.system.alphabet().action_count() << '\n';
      return ExitOk;
    }

    if (*check) {
      ParsedGame parsed = parse_game(detail::read_file(file));
      const Game& game = detail::require_ats(parsed, "check-strategy");
      DistributedStrategy sigma = parse_strategy(detail::read_file(strat_file), game);
      validate_strategy(game, sigma);
      out << "file: " << file << '\n';
      out << "strategy: " << strat_file << '\n';
      out << "command: check-strategy\n";
      out << "horizon: " << horizon << '\n';
      Verdict v = is_winning_strategy(game, sigma, horizon, max_plays);
      out << "verdict: " << to_string(v.kind) << '\n';
      if (v.kind == VerdictKind::EnvironmentWins && v.counterexample) {
        out << "counterexample play:\n";
        out << play_transcript(game, *v.counterexample);
      }
      if (v.kind == VerdictKind::Unknown) out << "reason: " << v.reason << '\n';
      return detail::verdict_exit(v.kind);
    }

    if (*simulate) {
      ParsedGame parsed = parse_game(detail::read_file(file));
      const bool asyn = std::holds_alternative<AsynGame>(parsed);
      Game game = asyn ? std::get<AsynGame>(parsed).as_game() : std::get<Game>(parsed);
      out << "file: " << file << '\n';
      out << "command: simulate\n";
      out << "schedule: " << schedule << '\n';
      out << "seed: " << seed << '\n';
      std::mt19937_64 rng(seed);
      Play play = Play::empty(game);
      std::string stopped;
      for (const auto& name : detail::split_schedule(schedule)) {
        auto a = game.system.alphabet().action_index(name);
        if (!a) throw Error("unknown action \"" + name + "\" in schedule");
        std::vector<Play> nexts = step(game, play, *a);
        if (nexts.empty()) {
          stopped = "action " + name + " not enabled after " + std::to_string(play.size()) +
                    " event(s); stopping";
          break;
        }
        std::uniform_int_distribution<std::size_t> pick(0, nexts.size() - 1);
        play = nexts[pick(rng)];
      }
      out << "play:\n" << play_transcript(game, play);
      if (!stopped.empty()) out << "note: " << stopped << '\n';
      bool maximal = is_maximal(game, play);
      out << "status: " << (maximal ? "maximal" : "partial") << '\n';
      if (maximal || game.condition.is_safety())
        out << "winner: " << to_string(winner(game, play)) << '\n';
      return ExitOk;
    }

    if (*exportdot) {
      ParsedGame parsed = parse_game(detail::read_file(file));
      const bool asyn = std::holds_alternative<AsynGame>(parsed);
      const AsyncTransitionSystem& sys =
          asyn ? std::get<AsynGame>(parsed).automaton : std::get<Game>(parsed).system;
      const GlobalState& initial =
          asyn ? std::get<AsynGame>(parsed).initial : std::get<Game>(parsed).initial;
      const WinningCondition& cond =
          asyn ? std::get<AsynGame>(parsed).condition : std::get<Game>(parsed).condition;
      if (!trace_word.empty()) {
        Trace t = Trace::from_word_names(sys.alphabet_ref(), detail::split_schedule(trace_word));
        out << trace_to_dot(t);
      } else {
        out << global_graph_to_dot(sys, initial, &cond);
      }
      return ExitOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << file << ": " << e.what() << '\n';
    return ExitUsage;
  } catch (const ExplosionCapError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCap;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitUsage;
  }
  err << "error: no subcommand\n";
  return ExitUsage;
}

} // namespace atsg

#endif
