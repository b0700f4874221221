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

#include <catch_amalgamated.hpp>

#include "atsg/trace.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace atsg;

namespace {

// Σ_q = {a}, Σ_r = {b}: the two-process alphabet of the running example.
AlphabetRef two_proc() {
  return make_alphabet({"q", "r"}, {{"a"}, {"b"}});
}

// One process owning both a and b: fully dependent.
AlphabetRef one_proc() {
  return make_alphabet({"q"}, {{"a", "b"}});
}

} // namespace

TEST_CASE("alphabet derives locations and independence") {
  auto alpha = make_alphabet({"p", "q", "r"}, {{"a", "m"}, {"b", "m"}, {"c"}});
  REQUIRE(alpha->process_count() == 3);
  REQUIRE(alpha->action_count() == 4);
  ActionId a = *alpha->action_index("a"), b = *alpha->action_index("b"),
           c = *alpha->action_index("c"), m = *alpha->action_index("m");
  REQUIRE(alpha->loc(m) == std::vector<ProcessId>{0, 1});
  REQUIRE(alpha->independent(a, b));
  REQUIRE(alpha->independent(a, c));
  REQUIRE(!alpha->independent(a, m));
  REQUIRE(!alpha->independent(b, m));
  // D is reflexive, I irreflexive; both symmetric; they partition Σ×Σ.
  for (ActionId x = 0; x < alpha->action_count(); ++x) {
    REQUIRE(alpha->dependent(x, x));
    for (ActionId y = 0; y < alpha->action_count(); ++y) {
      REQUIRE(alpha->dependent(x, y) == alpha->dependent(y, x));
      REQUIRE(alpha->independent(x, y) != alpha->dependent(x, y));
    }
  }
  REQUIRE_THROWS_AS(make_alphabet({"p", "p"}, {{"a"}, {"b"}}), Error);
}

TEST_CASE("trace_from_word on independent letters leaves them unordered") {
  Trace t = Trace::from_word_names(two_proc(), {"a", "b"});
  REQUIRE(t.size() == 2);
  REQUIRE(!t.leq(0, 1));
  REQUIRE(!t.leq(1, 0));
  REQUIRE(t.covering_predecessors(0).empty());
  REQUIRE(t.covering_predecessors(1).empty());
}

TEST_CASE("independent letters commute: ab equals ba") {
  Trace ab = Trace::from_word_names(two_proc(), {"a", "b"});
  Trace ba = Trace::from_word_names(two_proc(), {"b", "a"});
  REQUIRE(ab == ba);
}

TEST_CASE("fully dependent word gives a chain") {
  Trace t = Trace::from_word_names(one_proc(), {"a", "a", "b"});
  REQUIRE(t.size() == 3);
  REQUIRE(t.covering_successors(0) == std::vector<int>{1});
  REQUIRE(t.covering_successors(1) == std::vector<int>{2});
  REQUIRE(t.leq(0, 2));
}

TEST_CASE("unknown word letters are rejected") {
  REQUIRE_THROWS_AS(Trace::from_word_names(two_proc(), {"a", "z"}), UnknownActionError);
  Trace t(two_proc());
  REQUIRE_THROWS_AS(t.append(5), UnknownActionError);
}

TEST_CASE("canonical form is the least linearization") {
  REQUIRE(Trace(two_proc()).canonical_form().empty());
  Trace t = Trace::from_word_names(two_proc(), {"b", "a"});
  // Oracle: minimum over all linearizations.
  std::vector<std::vector<ActionId>> words;
  for (const auto& lin : oracle::all_linearizations(t)) {
    std::vector<ActionId> w;
    for (int e : lin) w.push_back(t.label(e));
    words.push_back(w);
  }
  REQUIRE(words.size() == 2);
  REQUIRE(t.canonical_form() == *std::min_element(words.begin(), words.end()));
  REQUIRE(t.canonical_word() == "a b");
}

TEST_CASE("configuration counts on the running shapes") {
  // Two independent events: the powerset of an antichain.
  REQUIRE(Trace::from_word_names(two_proc(), {"a", "b"}).configurations().size() == 4);
  // A three-event chain has its prefixes only.
  REQUIRE(Trace::from_word_names(one_proc(), {"a", "a", "b"}).configurations().size() == 4);
}

TEST_CASE("event and action successors") {
  Trace chain = Trace::from_word_names(one_proc(), {"a", "a", "b"});
  Configuration empty;
  auto succ = chain.event_successors(empty);
  REQUIRE(succ.size() == 1);
  REQUIRE(succ[0].first.id == 0);
  REQUIRE(chain.event_successors(chain.full_configuration()).empty());

  ActionId a = *chain.alphabet().action_index("a");
  ActionId b = *chain.alphabet().action_index("b");
  REQUIRE(chain.action_successors(empty, b).empty());
  REQUIRE(chain.action_successors(empty, a).size() == 1);
  REQUIRE(chain.action_successors(empty, a)[0] == empty.with(0));

  Trace indep = Trace::from_word_names(two_proc(), {"a", "b"});
  REQUIRE(indep.event_successors(Configuration()).size() == 2);
  REQUIRE(indep.action_successors(Configuration(), *indep.alphabet().action_index("a")).size() ==
          1);
}

TEST_CASE("views and maximal events") {
  Trace t = Trace::from_word_names(two_proc(), {"a", "b"});
  Configuration full = t.full_configuration();
  SECTION("i-view of the empty configuration is empty") {
    REQUIRE(t.i_view(Configuration(), 0).empty());
    REQUIRE(!t.max_event(Configuration(), 0).has_value());
  }
  SECTION("q only sees its own event") {
    Configuration vq = t.i_view(full, 0);
    REQUIRE(vq.size() == 1);
    REQUIRE(vq.contains(0));
    REQUIRE(t.max_event(full, 0)->id == 0);
  }
  SECTION("joint view recovers the whole configuration") {
    REQUIRE(t.p_view(full, {0, 1}) == full);
    REQUIRE(t.p_view(full, {0}) == t.i_view(full, 0));
  }
  SECTION("chain view is the whole chain") {
    Trace chain = Trace::from_word_names(one_proc(), {"a", "a", "b"});
    REQUIRE(chain.i_view(chain.full_configuration(), 0) == chain.full_configuration());
    REQUIRE(chain.max_event(chain.full_configuration(), 0)->id == 2);
  }
}

TEST_CASE("primes") {
  Trace chain = Trace::from_word_names(one_proc(), {"a", "a", "b"});
  REQUIRE(chain.prime_of(0).size() == 1);
  REQUIRE(chain.prime_of(2) == chain.full_configuration());
  Trace indep = Trace::from_word_names(two_proc(), {"a", "b"});
  REQUIRE(indep.prime_of(1).size() == 1);
}

TEST_CASE("append grows traces like from_word") {
  Trace t(two_proc());
  auto [t1, e1] = t.append(*t.alphabet().action_index("a"));
  REQUIRE(t1.size() == 1);
  REQUIRE(e1.id == 0);
  auto [t2, e2] = t1.append(*t.alphabet().action_index("b"));
  REQUIRE(e2.id == 1);
  REQUIRE(!t2.leq(0, 1));
  REQUIRE(t2 == Trace::from_word_names(two_proc(), {"a", "b"}));
}

TEST_CASE("trace laws on random instances") {
  testgen::Rng rng(20260810);
  for (int round = 0; round < 60; ++round) {
    AlphabetRef alpha = testgen::random_alphabet(rng);
    std::vector<ActionId> word = testgen::random_word(rng, *alpha, 8);
    Trace t = Trace::from_word(alpha, word);

    SECTION("adjacent independent swap invariance, round " + std::to_string(round)) {}
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (!alpha->independent(word[i], word[i + 1])) continue;
      std::vector<ActionId> swapped = word;
      std::swap(swapped[i], swapped[i + 1]);
      REQUIRE(Trace::from_word(alpha, swapped) == t);
    }

    // Dependent labels are ordered; covering pairs are dependent.
    for (int e = 0; e < t.size(); ++e) {
      for (int f = 0; f < t.size(); ++f)
        if (alpha->dependent(t.label(e), t.label(f))) REQUIRE((t.leq(e, f) || t.leq(f, e)));
      for (int f : t.covering_successors(e)) REQUIRE(alpha->dependent(t.label(e), t.label(f)));
    }

    auto configs = t.configurations();
    // Enumerated configurations agree with the powerset oracle.
    auto brute = oracle::brute_force_configurations(t);
    REQUIRE(configs.size() == brute.size());
    REQUIRE(std::set<Configuration>(configs.begin(), configs.end()) ==
            std::set<Configuration>(brute.begin(), brute.end()));

    for (const auto& c : configs) {
      REQUIRE(t.is_configuration(c));
      // Views are configurations; nonempty ones are primes at the process.
      for (ProcessId p = 0; p < alpha->process_count(); ++p) {
        Configuration v = t.i_view(c, p);
        REQUIRE(t.is_configuration(v));
        auto m = t.max_event(c, p);
        if (m) {
          REQUIRE(v == t.prime_of(m->id));
          REQUIRE(alpha->participates(p, m->action));
        } else {
          REQUIRE(v.empty());
        }
      }
      // Collective view of everybody recovers the configuration.
      std::vector<ProcessId> everyone;
      for (ProcessId p = 0; p < alpha->process_count(); ++p) everyone.push_back(p);
      Configuration pv = t.p_view(c, everyone);
      REQUIRE(std::includes(c.ids().begin(), c.ids().end(), pv.ids().begin(), pv.ids().end()));
      REQUIRE(pv == c);
      // ⇒ / → consistency.
      for (ActionId a = 0; a < alpha->action_count(); ++a) {
        std::vector<Configuration> expect;
        for (auto& [ev, succ] : t.event_successors(c))
          if (ev.action == a) expect.push_back(succ);
        REQUIRE(t.action_successors(c, a) == expect);
      }
    }
  }
}

TEST_CASE("configuration counts match the powerset oracle up to 12 events") {
  testgen::Rng rng(1212);
  for (int round = 0; round < 10; ++round) {
    AlphabetRef alpha = testgen::random_alphabet(rng, 4, 5);
    std::vector<ActionId> word;
    for (int i = 0; i < 12; ++i) word.push_back(testgen::pick(rng, 0, alpha->action_count() - 1));
    Trace t = Trace::from_word(alpha, word);
    REQUIRE(t.configurations().size() == oracle::brute_force_configurations(t).size());
  }
}

TEST_CASE("enumeration caps surface as errors") {
  auto alpha = make_alphabet({"q", "r"}, {{"a"}, {"b"}});
  Trace t = Trace::from_word_names(alpha, {"a", "b", "a", "b"});
  REQUIRE_THROWS_AS(t.configurations(2), ExplosionCapError);
}

TEST_CASE("trace counting matches swap-class counting") {
  testgen::Rng rng(7);
  for (int round = 0; round < 12; ++round) {
    AlphabetRef alpha = testgen::random_alphabet(rng, 3, 3);
    int n = testgen::pick(rng, 0, 5);
    std::set<std::vector<ActionId>> canon;
    std::vector<ActionId> word(n);
    std::function<void(int)> sweep = [&](int i) {
      if (i == n) {
        canon.insert(Trace::from_word(alpha, word).canonical_form());
        return;
      }
      for (ActionId a = 0; a < alpha->action_count(); ++a) {
        word[i] = a;
        sweep(i + 1);
      }
    };
    sweep(0);
    REQUIRE(canon.size() == oracle::word_class_count(*alpha, n));
  }
}
