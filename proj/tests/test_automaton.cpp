// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/automaton.hpp"
#include "autodich/corpus.hpp"
#include "autodich/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "oracles.hpp"

using namespace autodich;

namespace {

Automaton random_nfa(std::mt19937_64& rng, int k, std::size_t n) {
  RandomAutomatonOptions o;
  o.radix = k;
  o.states = n;
  o.deterministic = false;
  o.branching = 0.3;
  o.density = 0.7;
  return random_automaton(rng, o);
}

Automaton random_dfa(std::mt19937_64& rng, int k, std::size_t n, double density = 0.85) {
  RandomAutomatonOptions o;
  o.radix = k;
  o.states = n;
  o.density = density;
  return random_automaton(rng, o);
}

/// Language agreement of `got` with `pred` on all words of length <= len.
template <class Pred>
void check_language(const Automaton& got, std::size_t len, Pred pred) {
  for (const Word& w : oracle::all_words(got.alphabet_size(), len)) {
    INFO("word length " << w.size());
    CHECK(oracle::accepts(got, w) == pred(w));
  }
}

Automaton one_zero_star(bool extra_unreachable) {
  AutomatonBuilder b(2, 1, extra_unreachable ? 3 : 2);
  b.add_initial(0);
  b.add_transition(0, 1, 1);
  b.add_transition(1, 0, 1);
  b.set_final(1);
  if (extra_unreachable) {
    b.add_transition(2, 0, 1);
    b.set_final(2);
  }
  return std::move(b).build();
}

}  // namespace

TEST_CASE("builder detects determinism and validates input") {
  const Automaton f = fig1_automaton();
  CHECK(f.is_deterministic());
  CHECK(f.is_complete());
  CHECK(f.num_states() == 3);
  CHECK_FALSE(one_zero_star(false).is_complete());

  AutomatonBuilder b(3, 1, 2);
  CHECK_THROWS_AS(b.add_transition(0, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(b.add_transition(0, 1, 2), InvalidArgument);
  CHECK_THROWS_AS(AutomatonBuilder(1, 1), InvalidArgument);

  AutomatonBuilder two(2, 2, 1);
  CHECK(two.alphabet_size() == 4);
  const Automaton t = std::move(two).build();
  const int digits[] = {1, 0};
  CHECK(t.encode_symbol(digits) == 1);
  CHECK(t.decode_symbol(2) == std::vector<int>{0, 1});
}

TEST_CASE("determinize") {
  SUBCASE("two initial states accepting the empty word") {
    AutomatonBuilder b(2, 1, 2);
    b.add_initial(0);
    b.add_initial(1);
    b.set_final(0);
    b.set_final(1);
    const Automaton d = determinize(std::move(b).build());
    CHECK(d.is_deterministic());
    CHECK(d.is_complete());
    CHECK(accepts(d, Word{}));
  }
  SUBCASE("reverse of fig1") {
    const Automaton f = fig1_automaton();
    const Automaton d = determinize(reverse(f));
    CHECK(d.is_complete());
    check_language(d, 8, [&](const Word& w) {
      Word r(w.rbegin(), w.rend());
      return oracle::accepts(f, r);
    });
  }
  SUBCASE("random NFAs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      const Automaton a = random_nfa(rng, 2, 4);
      const Automaton d = determinize(a);
      CHECK(d.is_complete());
      check_language(d, 8, [&](const Word& w) { return oracle::accepts(a, w); });
    }
  }
  SUBCASE("deterministic input stays equivalent") {
    const Automaton f = fig1_automaton();
    CHECK(equivalent(f, determinize(f)));
  }
  SUBCASE("state cap") {
    std::mt19937_64 rng(3);
    const Automaton a = random_nfa(rng, 2, 6);
    CHECK_THROWS_AS(determinize(a, 1), LimitExceeded);
  }
}

TEST_CASE("minimize") {
  SUBCASE("1·0* with an unreachable state") {
    const Automaton m = minimize(one_zero_star(true));
    CHECK(m.num_states() == 2);
    // Myhill-Nerode count by brute force: distinct residual signatures on
    // suffixes up to length 6, restricted to live residuals.
    const Automaton a = one_zero_star(true);
    const auto words = oracle::all_words(2, 6);
    std::set<std::vector<bool>> classes;
    for (const Word& u : words) {
      std::vector<bool> sig;
      bool live = false;
      for (const Word& v : words) {
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        const bool acc = oracle::accepts(a, uv);
        sig.push_back(acc);
        live = live || acc;
      }
      if (live) classes.insert(sig);
    }
    CHECK(classes.size() == m.num_states());
  }
  SUBCASE("empty language") {
    const Automaton m = minimize(empty_language(2, 1));
    CHECK(m.finals().empty());
    CHECK(trim(m).finals().empty());
  }
  SUBCASE("idempotent and language preserving on random NFAs") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const Automaton a = random_nfa(rng, 2, 4);
      const Automaton m = minimize(a);
      CHECK(m.is_deterministic());
      CHECK(minimize(m) == m);
      check_language(m, 8, [&](const Word& w) { return oracle::accepts(a, w); });
      const Automaton d = determinize(a);
      CHECK(m.num_states() <= d.num_states());
    }
  }
}

TEST_CASE("boolean_combine") {
  std::mt19937_64 rng(17);
  SUBCASE("iff(a, a) is universal") {
    const Automaton f = fig1_automaton();
    CHECK(equivalent(boolean_combine(f, f, BoolOp::Iff), universal_language(3, 1)));
  }
  SUBCASE("product bound for 3- and 4-state DFAs") {
    for (int trial = 0; trial < 50; ++trial) {
      const Automaton a = complete(random_dfa(rng, 2, 3, 1.0));
      const Automaton b = complete(random_dfa(rng, 2, 4, 1.0));
      REQUIRE(a.num_states() == 3);
      REQUIRE(b.num_states() == 4);
      CHECK(boolean_combine(a, b, BoolOp::Iff).num_states() <= 12);
    }
  }
  SUBCASE("evens and odds are disjoint") {
    const Automaton evens = multiples_automaton(2, 2);
    const Automaton odds = complement(evens);
    // complement also contains words with leading zeros; intersect with
    // evens is still empty.
    CHECK(is_empty_language(boolean_combine(evens, odds, BoolOp::Intersect)));
  }
  SUBCASE("pointwise semantics on random NFAs") {
    for (int trial = 0; trial < 100; ++trial) {
      const Automaton a = random_nfa(rng, 2, 3);
      const Automaton b = random_nfa(rng, 2, 3);
      for (BoolOp op : {BoolOp::Union, BoolOp::Intersect, BoolOp::Difference, BoolOp::Iff}) {
        const Automaton c = boolean_combine(a, b, op);
        check_language(c, 7, [&](const Word& w) {
          const bool x = oracle::accepts(a, w), y = oracle::accepts(b, w);
          switch (op) {
            case BoolOp::Union: return x || y;
            case BoolOp::Intersect: return x && y;
            case BoolOp::Difference: return x && !y;
            case BoolOp::Iff: return x == y;
          }
          return false;
        });
      }
    }
  }
  SUBCASE("radix mismatch") {
    CHECK_THROWS_AS(boolean_combine(fig1_automaton(), evil_automaton(), BoolOp::Union),
                    InvalidArgument);
  }
}

TEST_CASE("left_quotient") {
  SUBCASE("empty prefix") {
    const Automaton f = fig1_automaton();
    CHECK(equivalent(left_quotient(f, Word{}), f));
  }
  SUBCASE("multiples of 3 after the prefix 1") {
    const Automaton m3 = multiples_automaton(2, 3);
    const Word u{1};
    const Automaton q = left_quotient(m3, u);
    CHECK(q.num_states() <= m3.num_states() + 1);
    check_language(q, 10, [](const Word& v) {
      Word w{1};
      w.insert(w.end(), v.begin(), v.end());
      return oracle::value(w, 2) % 3 == 0;
    });
  }
  SUBCASE("state bound on random DFAs") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
      const Automaton a = random_dfa(rng, 2, 5);
      Word u;
      for (int i = 0, n = static_cast<int>(rng() % 5); i < n; ++i) u.push_back(rng() % 2);
      const Automaton q = left_quotient(a, u);
      CHECK(q.num_states() <= a.num_states() + 1);
      CHECK(q.is_final(q.initial().front()) == oracle::accepts(a, u));
      check_language(q, 6, [&](const Word& v) {
        Word w = u;
        w.insert(w.end(), v.begin(), v.end());
        return oracle::accepts(a, w);
      });
    }
  }
}

TEST_CASE("reverse") {
  const Automaton f = fig1_automaton();
  CHECK(equivalent(reverse(reverse(f)), f));
  const Automaton r = reverse(powers_automaton(2));
  check_language(r, 8, [](const Word& w) {
    return !w.empty() && w.back() == 1 &&
           std::all_of(w.begin(), w.end() - 1, [](Symbol s) { return s == 0; });
  });
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const Automaton a = random_nfa(rng, 2, 4);
    check_language(reverse(a), 8, [&](const Word& w) {
      return oracle::accepts(a, Word(w.rbegin(), w.rend()));
    });
  }
}

TEST_CASE("scc_decompose") {
  SUBCASE("fig1") {
    const auto scc = scc_decompose(fig1_automaton());
    REQUIRE(scc.components.size() == 2);
    CHECK(scc.components[0] == std::vector<State>{0});
    CHECK(scc.components[1] == std::vector<State>{1, 2});
    CHECK_FALSE(scc.leaf[0]);
    CHECK(scc.leaf[1]);
  }
  SUBCASE("single self-loop") {
    const auto scc = scc_decompose(universal_language(2, 1));
    CHECK(scc.components.size() == 1);
    CHECK(scc.leaf[0]);
    CHECK(scc.cyclic[0]);
  }
  SUBCASE("acyclic") {
    const Word w{1, 0, 1, 1};
    const auto scc = scc_decompose(single_word(2, 1, w));
    CHECK(scc.components.size() == 5);
    for (const auto& c : scc.components) CHECK(c.size() == 1);
  }
  SUBCASE("random automata against pairwise reachability") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
      const Automaton a = random_nfa(rng, 2, 6);
      const auto scc = scc_decompose(a);
      const std::size_t n = a.num_states();
      std::vector<std::vector<bool>> reach(n);
      for (State q = 0; q < n; ++q) {
        const State from[] = {q};
        reach[q] = reachable_from(a, from);
      }
      for (State p = 0; p < n; ++p)
        for (State q = 0; q < n; ++q)
          CHECK((scc.component_of[p] == scc.component_of[q]) == (reach[p][q] && reach[q][p]));
      for (std::size_t c = 0; c < scc.components.size(); ++c) {
        CHECK(scc.leaf[c] == scc.condensation[c].empty());
        for (std::size_t d : scc.condensation[c]) CHECK(d > c);
      }
    }
  }
}

TEST_CASE("path_language") {
  const Automaton f = fig1_automaton();
  const Automaton c = path_language(f, 2, 2);
  for (const Word& w : {Word{}, Word{0}, Word{1}, Word{2, 1}, Word{2, 0, 1}})
    CHECK(accepts(c, w));
  CHECK_FALSE(accepts(c, Word{2}));

  SUBCASE("no loop gives {ε}") {
    const Automaton p = path_language(powers_automaton(2), 0, 0);
    check_language(p, 6, [](const Word& w) { return w.empty(); });
  }
  SUBCASE("closure under concatenation") {
    std::mt19937_64 rng(37);
    std::vector<Word> members;
    for (const Word& w : oracle::all_words(3, 6))
      if (oracle::accepts(c, w)) members.push_back(w);
    REQUIRE(members.size() > 10);
    for (int i = 0; i < 200; ++i) {
      Word u = members[rng() % members.size()];
      const Word& v = members[rng() % members.size()];
      u.insert(u.end(), v.begin(), v.end());
      CHECK(accepts(c, u));
    }
  }
  CHECK_THROWS_AS(path_language(f, 0, 7), InvalidArgument);
}

TEST_CASE("induced_subautomaton") {
  const Automaton f = fig1_automaton();
  const State all[] = {0, 1, 2};
  const Automaton s_all = induced_subautomaton(f, all);
  CHECK(s_all.is_initial(0));
  CHECK(s_all.num_transitions() == f.num_transitions());

  const State leaf[] = {1, 2};
  const Automaton s = induced_subautomaton(f, leaf);
  CHECK(s.num_states() == 2);
  CHECK(s.is_initial(1));  // q2, renumbered
  CHECK_FALSE(s.is_initial(0));

  AutomatonBuilder b(2, 1, 3);
  b.add_initial(0);
  b.add_transition(0, 0, 0);
  b.add_transition(1, 1, 2);
  const Automaton g = std::move(b).build();
  const State island[] = {1};
  CHECK(induced_subautomaton(g, island).initial().empty());
}

TEST_CASE("is_idempotent_word") {
  const Automaton f = fig1_automaton();
  CHECK(is_idempotent_word(f, Word{}));
  CHECK(is_idempotent_word(f, Word{0}));
  CHECK_FALSE(is_idempotent_word(evil_automaton(), Word{1}));
  CHECK(is_idempotent_word(evil_automaton(), Word{1, 1}));
}

TEST_CASE("equivalent") {
  const Automaton f = fig1_automaton();
  CHECK(equivalent(f, f));
  const Word w0{2};
  REQUIRE_FALSE(accepts(f, w0));
  CHECK_FALSE(equivalent(f, unite(f, single_word(3, 1, w0))));
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const Automaton a = random_nfa(rng, 2, 3);
    const Automaton b = random_nfa(rng, 2, 3);
    bool same = true;
    for (const Word& w : oracle::all_words(2, 10))
      if (oracle::accepts(a, w) != oracle::accepts(b, w)) {
        same = false;
        break;
      }
    // A difference within length 10 must be seen; agreement up to 10 is
    // only a necessary condition.
    if (!same) CHECK_FALSE(equivalent(a, b));
    if (equivalent(a, b)) CHECK(same);
  }
}

TEST_CASE("is_finite_language") {
  CHECK(is_finite_language(empty_language(2, 1)));
  AutomatonBuilder b(2, 1, 1);
  b.add_initial(0);
  b.set_final(0);
  b.add_transition(0, 0, 0);
  CHECK_FALSE(is_finite_language(std::move(b).build()));
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const Automaton a = random_nfa(rng, 2, 4);
    // Pumping: L is infinite iff it contains a word with length in [n, 2n).
    const std::size_t n = a.num_states();
    bool long_word = false;
    for (const Word& w : oracle::all_words(2, 2 * n - 1))
      if (w.size() >= n && oracle::accepts(a, w)) long_word = true;
    CHECK(is_finite_language(a) == !long_word);
  }
}

TEST_CASE("count_words_upto") {
  CHECK(count_words_upto(universal_language(2, 1), 3) == 15);
  CHECK(count_words_upto(powers_automaton(2), 5) == 5);
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const Automaton a = random_nfa(rng, 2, 4);
    long total = 0;
    for (const Word& w : oracle::all_words(2, 12)) total += oracle::accepts(a, w) ? 1 : 0;
    CHECK(count_words_upto(a, 12) == total);
  }
}

TEST_CASE("is_sparse") {
  CHECK(is_sparse(powers_automaton(2)));
  CHECK_FALSE(is_sparse(universal_language(2, 1)));
  // Two parallel edges inside one SCC are two paths.
  AutomatonBuilder b(2, 1, 1);
  b.add_initial(0);
  b.set_final(0);
  b.add_transition(0, 0, 0);
  b.add_transition(0, 1, 0);
  CHECK_FALSE(is_sparse(std::move(b).build()));
  // A non-sparse SCC that cannot reach a final state does not count.
  AutomatonBuilder c(2, 1, 3);
  c.add_initial(0);
  c.add_transition(0, 1, 1);
  c.set_final(1);
  c.add_transition(0, 0, 2);
  c.add_transition(2, 0, 2);
  c.add_transition(2, 1, 2);
  CHECK(is_sparse(std::move(c).build()));
}

TEST_CASE("shortest_accepted") {
  const auto w = shortest_accepted(fig1_automaton());
  REQUIRE(w.has_value());
  CHECK(*w == Word{1});
  CHECK_FALSE(shortest_accepted(empty_language(2, 1)).has_value());
}
