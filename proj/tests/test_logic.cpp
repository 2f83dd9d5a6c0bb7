// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/corpus.hpp"
#include "autodich/errors.hpp"
#include "autodich/logic.hpp"

#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace autodich;
using namespace autodich::logic;

namespace {

/// Unary members of a compiled one-variable relation up to n.
std::vector<unsigned> members(const Relation& r, unsigned n) {
  std::vector<unsigned> out;
  for (unsigned x = 0; x <= n; ++x)
    if (r.contains({BigInt(x)})) out.push_back(x);
  return out;
}

/// ℓ(x) = y written out directly.
Formula ell(const Term& x, const Term& y) {
  return land({pow_k(y), forall("p", implies(pow_k(var("p")), iff(gt(var("p"), x), ge(var("p"), y))))});
}

struct RandomSentence {
  std::mt19937_64& rng;
  std::vector<std::string> scope;

  Term term() {
    std::vector<Term> parts;
    const int n = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < n; ++i) {
      const auto c = rng() % 3;
      if (c == 0 || scope.empty()) {
        parts.push_back(lit(rng() % 20));
      } else {
        Term v = var(scope[rng() % scope.size()]);
        parts.push_back(c == 1 ? v : scale(1 + rng() % 3, v));
      }
    }
    return add(parts);
  }

  Formula atom() {
    switch (rng() % 5) {
      case 0: return eq(term(), term());
      case 1: return lt(term(), term());
      case 2: return in_set(term(), "X");
      case 3: return pow_k(term());
      default: return mod_eq(term(), 2 + rng() % 3, rng() % 3);
    }
  }

  Formula formula(int depth) {
    if (depth == 0) return atom();
    switch (rng() % 5) {
      case 0: return lnot(formula(depth - 1));
      case 1: return land({formula(depth - 1), formula(depth - 1)});
      case 2: return lor({formula(depth - 1), formula(depth - 1)});
      default: {
        // Quantifiers are bounded by construction: v < c with c <= 40.
        const std::string v = "v" + std::to_string(scope.size());
        const Formula guard = lt(var(v), lit(1 + rng() % 40));
        scope.push_back(v);
        Formula body = formula(depth - 1);
        scope.pop_back();
        if (rng() % 2) return exists(v, land({guard, body}));
        return forall(v, implies(guard, body));
      }
    }
  }
};

}  // namespace

TEST_CASE("relation_addition") {
  const Relation add10 = relation_addition(10);
  CHECK(add10.contains({2, 3, 5}));
  CHECK_FALSE(add10.contains({2, 3, 6}));
  for (int k : {2, 3}) {
    const Relation r = relation_addition(k);
    CHECK(r.contains({0, 0, 0}));
    for (unsigned x = 0; x <= 200; ++x)
      for (unsigned y = 0; y <= 200; ++y) {
        CHECK(r.contains({x, y, x + y}));
        CHECK_FALSE(r.contains({x, y, x + y + 1}));
        if (x + y > 0) CHECK_FALSE(r.contains({x, y, x + y - 1}));
      }
    // Functional in z on a small box.
    for (unsigned x = 0; x <= 20; ++x)
      for (unsigned y = 0; y <= 20; ++y) {
        int hits = 0;
        for (unsigned z = 0; z <= 60; ++z) hits += r.contains({x, y, z}) ? 1 : 0;
        CHECK(hits == 1);
      }
  }
}

TEST_CASE("compile") {
  SUBCASE("powers below 9") {
    const Relation r = compile(land({pow_k(var("x")), lt(var("x"), lit(9))}), {}, {2});
    CHECK(members(r, 100) == std::vector<unsigned>{1, 2, 4, 8});
  }
  SUBCASE("exists y with x + y = x") {
    const Relation r = compile(exists("y", eq(add(var("x"), var("y")), var("x"))), {}, {3});
    CHECK(members(r, 50).size() == 51);
  }
  SUBCASE("graph of ell") {
    const Relation r = compile(ell(var("x"), var("y")), {}, {2});
    REQUIRE(r.vars == std::vector<std::string>{"x", "y"});
    CHECK(r.contains({8, 16}));
    CHECK(r.contains({7, 8}));
    CHECK(r.contains({0, 1}));
    CHECK_FALSE(r.contains({8, 8}));
    for (unsigned x = 0; x <= 100; ++x) {
      unsigned y = 1;
      while (y <= x) y *= 2;
      CHECK(r.contains({x, y}));
      CHECK_FALSE(r.contains({x, 2 * y}));
    }
  }
  SUBCASE("set atoms and terms") {
    const SetEnv env{{"X", BaseKSet(multiples_automaton(2, 3))}};
    const Relation r = compile(in_set(add(var("x"), lit(1)), "X"), env);
    for (unsigned x = 0; x <= 200; ++x) CHECK(r.contains({x}) == ((x + 1) % 3 == 0));
    const Relation m = compile(mod_eq(scale(2, var("x")), 5, 1), {}, {3});
    for (unsigned x = 0; x <= 200; ++x) CHECK(m.contains({x}) == ((2 * x) % 5 == 1));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(compile(in_set(var("x"), "Y"), {}, {2}), InvalidArgument);
    const SetEnv mixed{{"A", BaseKSet(evil_automaton())}, {"B", BaseKSet(fig1_automaton())}};
    CHECK_THROWS_AS(compile(land({in_set(var("x"), "A"), in_set(var("x"), "B")}), mixed), InvalidArgument);
    CHECK_THROWS_AS(compile(exists("x", exists("x", eq(var("x"), lit(1)))), {}, {2}), InvalidArgument);
    CHECK_THROWS_AS(compile(eq(var("x"), lit(1)), {}), InvalidArgument);
  }
  SUBCASE("padding closure of compiled relations") {
    std::mt19937_64 rng(5);
    const SetEnv env{{"X", BaseKSet(evil_automaton())}};
    for (int trial = 0; trial < 30; ++trial) {
      RandomSentence gen{rng, {"a", "b"}};
      const Formula f = gen.formula(2);
      const Relation r = compile(f, env, {2});
      const std::size_t alpha = r.automaton.alphabet_size();
      for (const Word& w : oracle::all_words(alpha, alpha > 2 ? 3 : 6)) {
        Word zw = w;
        zw.insert(zw.begin(), 0);
        CHECK(accepts(r.automaton, w) == accepts(r.automaton, zw));
      }
    }
  }
}

TEST_CASE("decide_sentence") {
  const SetEnv pow2{{"X", BaseKSet(powers_automaton(2))}};
  CHECK(decide_sentence(forall("x", exists("y", land({lt(var("x"), var("y")), pow_k(var("y"))}))), {}, {2}).value);
  CHECK_FALSE(decide_sentence(exists("x", land({in_set(var("x"), "X"), lt(var("x"), lit(1))})), pow2).value);
  const Decision d = decide_sentence(exists("x", land({in_set(var("x"), "X"), lt(lit(5), var("x"))})), pow2);
  CHECK(d.value);
  CHECK(d.witness.at("x") == 8);
  CHECK_THROWS_AS(decide_sentence(eq(var("x"), lit(0)), {}, {2}), InvalidArgument);

  SUBCASE("random bounded sentences agree with the bounded evaluator") {
    std::mt19937_64 rng(9);
    const SetEnv env{{"X", BaseKSet(fig1_cycle_automaton())}};
    int trues = 0;
    for (int trial = 0; trial < 100; ++trial) {
      RandomSentence gen{rng, {}};
      // Wrap in one quantifier so the sentence is closed.
      const Formula f = exists("v", land({lt(var("v"), lit(30)), [&] {
                                            gen.scope.push_back("v");
                                            Formula b = gen.formula(2);
                                            gen.scope.pop_back();
                                            return b;
                                          }()}));
      const bool by_automata = decide_sentence(f, env, {3}).value;
      const bool by_eval = eval_formula_bounded(f, env, {}, 500, 3);
      INFO(to_sexpr(f));
      CHECK(by_automata == by_eval);
      trues += by_eval ? 1 : 0;
    }
    CHECK(trues > 10);
    CHECK(trues < 90);
  }
}

TEST_CASE("is_eventually_periodic") {
  SUBCASE("multiples of 3") {
    const Periodicity p = is_eventually_periodic(BaseKSet(multiples_automaton(2, 3)));
    CHECK(p.periodic);
    CHECK(p.period == 3);
    CHECK(p.threshold == 0);
  }
  SUBCASE("powers of two") { CHECK_FALSE(is_eventually_periodic(BaseKSet(powers_automaton(2))).periodic); }
  SUBCASE("finite set") {
    const Word w{1, 0, 1, 1};  // 11
    const Periodicity p = is_eventually_periodic(BaseKSet(single_word(2, 1, w)));
    CHECK(p.periodic);
    CHECK(p.period == 1);
    CHECK(p.threshold == 12);
  }
  SUBCASE("evil numbers") { CHECK_FALSE(is_eventually_periodic(BaseKSet(evil_automaton())).periodic); }
  SUBCASE("random automata against the characteristic sequence") {
    std::mt19937_64 rng(21);
    int periodic = 0;
    for (int trial = 0; trial < 30; ++trial) {
      RandomAutomatonOptions o;
      o.states = 3;
      o.density = 0.9;
      const BaseKSet x(random_automaton(rng, o));
      std::vector<bool> bits;
      for (unsigned n = 0; n < 5000; ++n) bits.push_back(x.contains(n));
      const auto brute = oracle::detect_period(bits, 500, 1000);
      const Periodicity p = is_eventually_periodic(x);
      CHECK(p.periodic == brute.has_value());
      if (p.periodic) {
        periodic++;
        const auto per = static_cast<std::size_t>(p.period);
        const auto from = static_cast<std::size_t>(p.threshold);
        for (std::size_t n = from; n + per < bits.size(); ++n) CHECK(bits[n] == bits[n + per]);
      }
    }
    CHECK(periodic > 0);
    CHECK(periodic < 30);
  }
}

TEST_CASE("eval_formula_bounded") {
  CHECK(eval_formula_bounded(forall("x", eq(add(var("x"), lit(0)), var("x"))), {}, {}, 100, 2));
  CHECK_FALSE(eval_formula_bounded(exists("x", gt(var("x"), lit(100))), {}, {}, 100, 2));
  CHECK(eval_formula_bounded(exists("x", gt(var("x"), lit(100))), {}, {}, 101, 2));
  CHECK_THROWS_AS(eval_formula_bounded(eq(var("y"), lit(0)), {}, {}, 10, 2), InvalidArgument);
  // ℓ(8) = 16, ℓ(7) = 8 in base 2.
  CHECK(eval_formula_bounded(ell(lit(8), lit(16)), {}, {}, 1000, 2));
  CHECK(eval_formula_bounded(ell(lit(7), lit(8)), {}, {}, 1000, 2));
  CHECK_FALSE(eval_formula_bounded(ell(lit(8), lit(8)), {}, {}, 1000, 2));
}

TEST_CASE("s-expressions") {
  const Formula f = parse_sexpr("(forall n (implies (>= n N) (iff (in n X) (in (+ n p) X))))");
  CHECK(free_variables(f) == std::set<std::string>{"N", "p"});
  CHECK(set_names(f) == std::set<std::string>{"X"});
  CHECK(to_sexpr(parse_sexpr(to_sexpr(f))) == to_sexpr(f));
  const Formula g = parse_sexpr("(exists x (and (pow x) (< 5 (* 2 x)) (mod x 3 1)))");
  CHECK(decide_sentence(g, {}, {2}).value);

  auto error_at = [](const char* text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_sexpr(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(error_at("(and (= x 1)") == std::pair<std::size_t, std::size_t>{1, 13});
  CHECK(error_at("(and\n  (frob x))") == std::pair<std::size_t, std::size_t>{2, 4});
  CHECK(error_at("(= x 1) y") == std::pair<std::size_t, std::size_t>{1, 9});
  CHECK(error_at("") == std::pair<std::size_t, std::size_t>{1, 1});
}
