// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/dichotomy.hpp"
#include "autodich/errors.hpp"
#include "autodich/logic.hpp"

#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"

using namespace autodich;

namespace {

Automaton table(int k, const std::vector<std::vector<int>>& delta, std::vector<State> finals, State init = 0) {
  AutomatonBuilder b(k, 1, delta.size());
  b.add_initial(init);
  for (State q : finals) b.set_final(q);
  for (State q = 0; q < delta.size(); ++q)
    for (Symbol d = 0; d < delta[q].size(); ++d)
      if (delta[q][d] >= 0) b.add_transition(q, d, static_cast<State>(delta[q][d]));
  return std::move(b).build();
}

/// Ternary: evenly many 1s over {0,1}, then a 2, then zeros. Its first
/// component is not a leaf and not sparse.
Automaton evil_then_two() { return table(3, {{0, 1, 2}, {1, 0, -1}, {2, -1, -1}}, {2}); }

State run_from_start(const Automaton& d, const Word& w) {
  State q = d.initial().front();
  for (Symbol s : w) q = d.next(q, s);
  return q;
}

bool sigma_oracle(const Word& w, int ell, int m, int c, int k) {
  if (ell == 0 || m == 0) return false;
  if (!w.empty() && w.front() == 0) return false;
  if (w.size() % static_cast<std::size_t>(ell) != 0) return false;
  const auto v = static_cast<long>(oracle::value(w, k) % static_cast<std::uint64_t>(m));
  return (v + c) % m == 0;
}

bool congruence_oracle(const Word& w, const CongruenceWitness& cw, int k) {
  std::size_t start = 0;
  if (cw.zeros != ZeroMode::Free) {
    while (start < w.size() && w[start] == 0) ++start;
    if (cw.zeros == ZeroMode::NoLeadingZero && start > 0) return false;
  }
  const Word rest(w.begin() + static_cast<long>(start), w.end());
  const int v = static_cast<int>(oracle::value(rest, k) % static_cast<std::uint64_t>(cw.m));
  const int l = static_cast<int>(rest.size() % static_cast<std::size_t>(cw.ell));
  for (const auto& [a, b] : cw.residues)
    if (a == v && b == l) return true;
  return false;
}

Verdict verdict_of(const BaseKSet& x) { return classify(x).verdict; }

}  // namespace

TEST_CASE("classify_state_case") {
  const BaseKSet fig1(fig1_automaton());
  CHECK(classify_state_case(fig1, 2) == CycleCase::I);
  // q0 reads 0 to itself as well; q1 likewise.
  CHECK(classify_state_case(fig1, 0) == CycleCase::I);
  SUBCASE("no 0-transition") {
    const BaseKSet x(table(2, {{-1, 0}}, {0}));
    CHECK(classify_state_case(x, 0) == CycleCase::II);
  }
  SUBCASE("0 leaves the component") {
    const BaseKSet x(table(2, {{1, 0}, {1, -1}}, {0}));
    CHECK(classify_state_case(x, 0) == CycleCase::II);
  }
  SUBCASE("0 stays in the component elsewhere") {
    const BaseKSet x(table(2, {{1, 0}, {1, 0}}, {0}));
    CHECK(classify_state_case(x, 0) == CycleCase::III);
  }
  CHECK_THROWS_AS(classify_state_case(fig1, 3), InvalidArgument);
}

TEST_CASE("is_complete_scc") {
  SUBCASE("fig1 leaf") {
    const Automaton a = fig1_automaton();
    const State leaf[] = {1, 2};
    CHECK(is_complete_scc(a, leaf).complete);
  }
  SUBCASE("loop of 1 0*") {
    const Automaton a = powers_automaton(2);
    const auto scc = scc_decompose(a);
    const State acc = a.finals().front();
    const auto r = is_complete_scc(a, scc.components[scc.component_of[acc]]);
    CHECK_FALSE(r.complete);
    REQUIRE(r.missing);
    CHECK(r.missing->first == acc);
    CHECK(r.missing->second == 1);
  }
  SUBCASE("sigma builder") {
    const Automaton a = minimize(build_sigma_lmc(2, 3, 1, 2));
    const auto scc = scc_decompose(a);
    for (std::size_t c = 0; c < scc.components.size(); ++c)
      if (scc.leaf[c]) CHECK(is_complete_scc(a, scc.components[c]).complete);
  }
}

TEST_CASE("build_sigma_lmc") {
  CHECK(is_empty_language(build_sigma_lmc(2, 0, 0, 2)));
  CHECK(is_empty_language(build_sigma_lmc(0, 3, 0, 2)));
  SUBCASE("all canonical words") {
    const Automaton a = build_sigma_lmc(1, 1, 0, 3);
    for (const Word& w : oracle::all_words(3, 6))
      CHECK(oracle::accepts(a, w) == (w.empty() || w.front() != 0));
  }
  SUBCASE("even-length multiples of 3") {
    const Automaton a = build_sigma_lmc(2, 3, 0, 2);
    for (const Word& w : oracle::all_words(2, 10)) CHECK(oracle::accepts(a, w) == sigma_oracle(w, 2, 3, 0, 2));
  }
  SUBCASE("random parameters against the definition") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const int k = 2 + static_cast<int>(rng() % 2);
      const int ell = 1 + static_cast<int>(rng() % 3);
      const int m = 1 + static_cast<int>(rng() % 5);
      const int c = static_cast<int>(rng() % 7);
      const Automaton a = build_sigma_lmc(ell, m, c, k);
      for (const Word& w : oracle::all_words(static_cast<std::size_t>(k), k == 2 ? 9 : 6))
        CHECK(oracle::accepts(a, w) == sigma_oracle(w, ell, m, c, k));
    }
  }
}

TEST_CASE("congruence_test") {
  SUBCASE("all binary words") {
    const auto w = congruence_test(universal_language(2, 1), 1, 1);
    REQUIRE(w);
    CHECK(w->residues == std::vector<std::pair<int, int>>{{0, 0}});
  }
  SUBCASE("even-length multiples of 3") {
    const auto w = congruence_search(build_sigma_lmc(2, 3, 0, 2), 24);
    REQUIRE(w);
    CHECK(w->m == 3);
    CHECK(w->ell == 2);
    CHECK(w->residues == std::vector<std::pair<int, int>>{{0, 0}});
    CHECK(w->zeros == ZeroMode::NoLeadingZero);
    CHECK_FALSE(congruence_test(build_sigma_lmc(2, 3, 0, 2), 3, 1));
  }
  SUBCASE("evenly many ones") {
    for (int m = 1; m <= 16; ++m)
      for (int ell = 1; ell <= 16; ++ell) CHECK_FALSE(congruence_test(evil_automaton(), m, ell));
  }
  SUBCASE("random congruence languages") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
      CongruenceWitness cw;
      const int k = 2 + static_cast<int>(rng() % 2);
      cw.m = 1 + static_cast<int>(rng() % 5);
      cw.ell = 1 + static_cast<int>(rng() % 3);
      cw.zeros = static_cast<ZeroMode>(rng() % 3);
      for (int v = 0; v < cw.m; ++v)
        for (int l = 0; l < cw.ell; ++l)
          if (rng() % 3 == 0) cw.residues.emplace_back(v, l);
      const Automaton a = congruence_automaton(cw, k);
      for (const Word& w : oracle::all_words(static_cast<std::size_t>(k), 6))
        CHECK(oracle::accepts(a, w) == congruence_oracle(w, cw, k));
      const auto found = congruence_test(a, cw.m, cw.ell);
      REQUIRE(found);
      CHECK(equivalent(congruence_automaton(*found, k), a));
      for (const Word& w : oracle::all_words(static_cast<std::size_t>(k), 6))
        CHECK(oracle::accepts(a, w) == congruence_oracle(w, *found, k));
    }
  }
}

TEST_CASE("is_kn_definable") {
  SUBCASE("powers of two") {
    const KnResult r = is_kn_definable(BaseKSet(powers_automaton(2)));
    CHECK(r.definable);
    CHECK(r.evidence.size() == 2);
    for (const auto& e : r.evidence) CHECK(e.sparse);
  }
  SUBCASE("sigma 2 3 0") {
    const KnResult r = is_kn_definable(BaseKSet(build_sigma_lmc(2, 3, 0, 2)));
    CHECK(r.definable);
    bool seen = false;
    for (const auto& e : r.evidence)
      if (e.congruence) {
        seen = true;
        CHECK(e.leaf);
        CHECK(e.completeness.complete);
        CHECK(e.congruence->m == 3);
        CHECK(e.congruence->ell == 2);
      }
    CHECK(seen);
  }
  SUBCASE("evil numbers") {
    const KnResult r = is_kn_definable(BaseKSet(evil_automaton()));
    CHECK_FALSE(r.definable);
    CHECK(r.bound_limited);
    CHECK(r.failing_state.has_value());
  }
  SUBCASE("non-sparse inner component is exact") {
    const BaseKSet x(evil_then_two());
    const KnResult r = is_kn_definable(x);
    CHECK_FALSE(r.definable);
    CHECK_FALSE(r.bound_limited);
    REQUIRE(r.failing_state);
    const Automaton& d = x.padded_dfa();
    const auto scc = scc_decompose(d);
    CHECK_FALSE(scc.leaf[scc.component_of[*r.failing_state]]);
  }
  CHECK_THROWS_AS(is_kn_definable(BaseKSet(evil_automaton()), {0}), InvalidArgument);
}

TEST_CASE("classify corpus") {
  struct Item {
    const char* name;
    BaseKSet set;
    Verdict verdict;
  };
  const std::vector<Item> corpus = {
      {"multiples of 3", BaseKSet(multiples_automaton(2, 3)), Verdict::Presburger},
      {"powers of 2", BaseKSet(powers_automaton(2)), Verdict::KnInterdefinable},
      {"sigma 2 3 0", BaseKSet(build_sigma_lmc(2, 3, 0, 2)), Verdict::KnInterdefinable},
      {"evil", BaseKSet(evil_automaton()), Verdict::DefinesVk},
      {"evil then 2", BaseKSet(evil_then_two()), Verdict::DefinesVk},
  };
  for (const auto& item : corpus) {
    CAPTURE(item.name);
    const ClassificationReport r = classify(item.set);
    CHECK(r.verdict == item.verdict);
    CHECK(r.periodicity.has_value() == (r.verdict == Verdict::Presburger));
    CHECK(r.failing_state.has_value() == (r.verdict == Verdict::DefinesVk));
    CHECK(verdict_of(BaseKSet(minimize(item.set.automaton()))) == item.verdict);
    CHECK(verdict_of(base_power_transform(item.set, 2)) == item.verdict);
  }
  const ClassificationReport m3 = classify(corpus[0].set);
  REQUIRE(m3.periodicity);
  CHECK(m3.periodicity->first == 3);
  CHECK(classify(corpus[3].set).bound_limited);
  CHECK_FALSE(classify(corpus[4].set).bound_limited);
}

TEST_CASE("DEFINES_VK soundness on evil numbers") {
  const BaseKSet x(evil_automaton());
  const ClassificationReport r = classify(x);
  REQUIRE(r.verdict == Verdict::DefinesVk);
  const State q = *r.failing_state;
  const Automaton& d = x.padded_dfa();
  const Automaton cycle = path_language(d, q, q);
  CHECK_FALSE(is_sparse(cycle));
  CHECK_FALSE(logic::is_eventually_periodic(BaseKSet(cycle)).periodic);
  CHECK_FALSE(congruence_search(cycle, r.bound));

  const CycleContext ctx = CycleContext::normalized(BaseKSet(d), q);
  std::set<std::pair<int, int>> ratios;
  const int k = ctx.radix();
  const std::size_t b = beta(ctx);
  for (const BigInt& n : ctx.set().enumerate(2000)) {
    if (n == 0) continue;
    const auto e = static_cast<int>(log_k_exact(f_stable(ctx, n), k));
    const auto v = static_cast<int>(log_k_exact(v_ka(n, k, ctx.a()), k));
    ratios.emplace(e - v, 0);
  }
  CHECK(ratios.size() <= d.num_states() * b);
}

TEST_CASE("semenov_decompose") {
  SUBCASE("powers of two") {
    const auto dec = semenov_decompose(BaseKSet(powers_automaton(2)));
    CHECK(dec.verified);
    REQUIRE(dec.branches.size() == 1);
    REQUIRE(dec.branches[0].links.size() == 2);
    CHECK(dec.branches[0].links[0].sparse);
    CHECK(dec.branches[0].links[0].sigma == Symbol{1});
    CHECK_FALSE(dec.branches[0].links[1].sigma.has_value());
  }
  SUBCASE("sparse prefix with a congruent tail") {
    // 1 0* then a canonical multiple of 3.
    const Automaton a = concatenate(powers_automaton(2), build_sigma_lmc(1, 3, 0, 2));
    const auto dec = semenov_decompose(BaseKSet(a));
    CHECK(dec.verified);
    bool two_link = false;
    for (const auto& br : dec.branches) {
      for (std::size_t i = 0; i + 1 < br.links.size(); ++i) CHECK(br.links[i].sparse);
      if (br.links.size() >= 2 && !br.links.back().sparse) two_link = true;
    }
    CHECK(two_link);
  }
  CHECK_THROWS_AS(semenov_decompose(BaseKSet(evil_automaton())), DomainError);
  SUBCASE("random definable sets") {
    std::mt19937_64 rng(29);
    int done = 0;
    for (int trial = 0; trial < 60 && done < 15; ++trial) {
      RandomAutomatonOptions o;
      o.states = 3;
      o.density = 0.6;
      const BaseKSet x(random_automaton(rng, o));
      if (!is_kn_definable(x).definable) continue;
      ++done;
      const auto dec = semenov_decompose(x);
      CHECK(dec.verified);
      for (const auto& br : dec.branches)
        for (std::size_t i = 0; i + 1 < br.links.size(); ++i) CHECK(br.links[i].sparse);
    }
    CHECK(done > 0);
  }
}

TEST_CASE("cycle_membership_formula_check") {
  const BaseKSet fig1(fig1_automaton());
  const State q2 = run_from_start(fig1.padded_dfa(), Word{1});
  CHECK(cycle_membership_formula_check(fig1, q2, 22));
  CHECK_FALSE(cycle_membership_formula_check(fig1, q2, 2));
  CHECK_THROWS_AS(CycleMembershipCheck(BaseKSet(multiples_automaton(2, 3))), DomainError);

  const std::vector<BaseKSet> corpus = {fig1, BaseKSet(fig1_cycle_automaton()), BaseKSet(evil_automaton()),
                                        BaseKSet(powers_automaton(2)), BaseKSet(build_sigma_lmc(2, 3, 0, 2))};
  std::vector<CycleMembershipCheck> checks;
  for (const auto& x : corpus) checks.emplace_back(x);
  CHECK(checks[0].direct(q2, 22));
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    const auto& c = checks[rng() % checks.size()];
    const auto q = static_cast<State>(rng() % c.num_states());
    const BigInt n = rng() % 2001;
    CAPTURE(trial);
    CHECK(c.formula(q, n) == c.direct(q, n));
  }
}

TEST_CASE("sparseness within a component") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    RandomAutomatonOptions o;
    o.states = 2 + static_cast<std::size_t>(rng() % 3);
    o.radix = 2 + static_cast<int>(rng() % 2);
    const Automaton d = minimize(random_automaton(rng, o));
    const auto scc = scc_decompose(d);
    for (const auto& comp : scc.components) {
      bool any_sparse = false;
      for (State q : comp) any_sparse = any_sparse || is_sparse(path_language(d, q, q));
      if (!any_sparse) continue;
      for (State p : comp)
        for (State q : comp) CHECK(is_sparse(path_language(d, p, q)));
    }
  }
}

TEST_CASE("accepting component of w sigma is complete") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 2);
    const int ell = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 4);
    const int c = static_cast<int>(rng() % static_cast<unsigned>(m));
    Word w(rng() % 4);
    for (auto& s : w) s = static_cast<Symbol>(rng() % static_cast<unsigned>(k));
    const Automaton d = minimize(concatenate(single_word(k, 1, w), build_sigma_lmc(ell, m, c, k)));
    const auto scc = scc_decompose(d);
    for (std::size_t i = 0; i < scc.components.size(); ++i)
      if (scc.leaf[i] && scc.cyclic[i]) CHECK(is_complete_scc(d, scc.components[i]).complete);
  }
}

TEST_CASE("trichotomy on random sets") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    RandomAutomatonOptions o;
    o.states = 3;
    o.density = 0.8;
    const BaseKSet x(random_automaton(rng, o));
    ClassifyOptions opts;
    opts.all_states = true;
    const ClassificationReport r = classify(x, opts);
    CHECK((r.verdict == Verdict::Presburger) == logic::is_eventually_periodic(x).periodic);
    CHECK(r.periodicity.has_value() == (r.verdict == Verdict::Presburger));
    CHECK(r.failing_state.has_value() == (r.verdict == Verdict::DefinesVk));
    for (const auto& e : r.scc_evidence) CHECK(e.states_agree);
    CHECK(verdict_of(BaseKSet(minimize(x.automaton()))) == r.verdict);
    CHECK(verdict_of(base_power_transform(x, 2)) == r.verdict);
  }
}
