// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/dichotomy.hpp"

#include "autodich/errors.hpp"
#include "autodich/logic.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace autodich {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Presburger: return "PRESBURGER";
    case Verdict::KnInterdefinable: return "KN_INTERDEFINABLE";
    case Verdict::DefinesVk: return "DEFINES_VK";
  }
  return "?";
}

std::string to_string(ZeroMode z) {
  switch (z) {
    case ZeroMode::Free: return "free";
    case ZeroMode::NoLeadingZero: return "no-leading-zero";
    case ZeroMode::ZeroAbsorbing: return "zero-absorbing";
  }
  return "?";
}

CycleCase classify_state_case(const BaseKSet& x, State p) {
  const Automaton& a = x.automaton();
  if (p >= a.num_states()) throw InvalidArgument("state " + std::to_string(p) + " out of range");
  const auto succ = a.successors(p, 0);
  if (succ.size() == 1 && succ.front() == p) return CycleCase::I;
  if (succ.empty()) return CycleCase::II;
  const auto scc = scc_decompose(a);
  for (State t : succ)
    if (scc.component_of[t] == scc.component_of[p]) return CycleCase::III;
  return CycleCase::II;
}

SccCompleteness is_complete_scc(const Automaton& a, std::span<const State> component) {
  std::vector<bool> in(a.num_states(), false);
  for (State q : component) {
    if (q >= a.num_states()) throw InvalidArgument("state " + std::to_string(q) + " out of range");
    in[q] = true;
  }
  std::vector<State> sorted(component.begin(), component.end());
  std::sort(sorted.begin(), sorted.end());
  SccCompleteness out;
  for (State q : sorted)
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      const auto succ = a.successors(q, s);
      if (std::any_of(succ.begin(), succ.end(), [&](State t) { return in[t]; })) continue;
      out.complete = false;
      out.missing = std::make_pair(q, s);
      return out;
    }
  return out;
}

// --- congruence languages ---------------------------------------------------------

namespace {

ZeroMode probe_zeros(const Automaton& d) {
  const State init = d.initial().front();
  const State z = d.next(init, 0);
  if (z == kNoState) return ZeroMode::NoLeadingZero;
  if (z == init) return ZeroMode::ZeroAbsorbing;
  return ZeroMode::Free;
}

}  // namespace

Automaton congruence_automaton(const CongruenceWitness& w, int k) {
  if (w.m < 1 || w.ell < 1) throw InvalidArgument("m and ell must be positive");
  const std::size_t m = static_cast<std::size_t>(w.m), ell = static_cast<std::size_t>(w.ell);
  std::set<std::pair<int, int>> accept(w.residues.begin(), w.residues.end());
  // States v * ell + l; in the non-free modes one extra start state.
  const std::size_t cells = m * ell;
  const bool free = w.zeros == ZeroMode::Free;
  AutomatonBuilder b(k, 1, cells + (free ? 0 : 1));
  auto cell = [&](std::size_t v, std::size_t l) { return static_cast<State>(v * ell + l); };
  for (std::size_t v = 0; v < m; ++v)
    for (std::size_t l = 0; l < ell; ++l) {
      if (accept.count({static_cast<int>(v), static_cast<int>(l)})) b.set_final(cell(v, l));
      for (Symbol d = 0; d < static_cast<Symbol>(k); ++d)
        b.add_transition(cell(v, l), d, cell((v * k + d) % m, (l + 1) % ell));
    }
  if (free) {
    b.add_initial(cell(0, 0));
  } else {
    const State start = static_cast<State>(cells);
    b.add_initial(start);
    if (accept.count({0, 0})) b.set_final(start);
    if (w.zeros == ZeroMode::ZeroAbsorbing) b.add_transition(start, 0, start);
    for (Symbol d = 1; d < static_cast<Symbol>(k); ++d) b.add_transition(start, d, cell(d % m, 1 % ell));
  }
  return std::move(b).build();
}

std::optional<CongruenceWitness> congruence_test(const Automaton& cycle, int m, int ell) {
  if (cycle.tracks() != 1) throw InvalidArgument("congruence_test needs a one-track automaton");
  if (m < 1 || ell < 1) throw InvalidArgument("m and ell must be positive");
  const Automaton d = minimize(cycle);
  const int k = d.radix();
  CongruenceWitness w;
  w.m = m;
  w.ell = ell;
  w.zeros = probe_zeros(d);
  const bool free = w.zeros == ZeroMode::Free;

  // Image of L under (value mod m, counted length mod ell).
  struct Node {
    State s;
    int v, l;
    bool started;
    auto operator<=>(const Node&) const = default;
  };
  std::set<Node> seen;
  std::deque<Node> queue;
  std::set<std::pair<int, int>> image;
  const Node start{d.initial().front(), 0, 0, free};
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    const Node cur = queue.front();
    queue.pop_front();
    if (d.is_final(cur.s)) image.emplace(cur.v, cur.l);
    for (Symbol digit = 0; digit < static_cast<Symbol>(k); ++digit) {
      const State t = d.next(cur.s, digit);
      if (t == kNoState) continue;
      Node nxt{t, cur.v, cur.l, cur.started};
      if (cur.started || digit != 0) {
        nxt.v = static_cast<int>((static_cast<long>(cur.v) * k + digit) % m);
        nxt.l = (cur.l + 1) % ell;
        nxt.started = true;
      }
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  }
  w.residues.assign(image.begin(), image.end());
  if (!equivalent(d, congruence_automaton(w, k))) return std::nullopt;
  return w;
}

std::optional<CongruenceWitness> congruence_search(const Automaton& cycle, int bound) {
  if (bound < 1) throw InvalidArgument("bound must be positive");
  const std::size_t size = minimize(cycle).num_states();
  for (int m = 1; m <= bound; ++m)
    for (int ell = 1; ell <= bound; ++ell) {
      // The congruence automaton has at most m * ell + 1 states.
      if (size > static_cast<std::size_t>(m) * ell + 1) continue;
      if (auto w = congruence_test(cycle, m, ell)) return w;
    }
  return std::nullopt;
}

// --- classification ------------------------------------------------------------------

namespace {

struct StateVerdict {
  bool sparse = false;
  std::optional<CongruenceWitness> congruence;
  std::optional<std::pair<BigInt, BigInt>> periodic;
  bool definable = false;
  bool bound_limited = false;
};

StateVerdict test_state(const Automaton& dfa, State q, bool leaf, int bound) {
  StateVerdict v;
  const Automaton cycle = path_language(dfa, q, q);
  v.sparse = is_sparse(cycle);
  if (v.sparse) {
    v.definable = true;
    return v;
  }
  if (!leaf) return v;
  v.congruence = congruence_search(cycle, bound);
  if (v.congruence) {
    v.definable = true;
    return v;
  }
  const auto per = logic::is_eventually_periodic(BaseKSet(cycle));
  if (per.periodic) {
    v.periodic = std::make_pair(per.period, per.threshold);
    v.definable = true;
    return v;
  }
  v.bound_limited = true;
  return v;
}

}  // namespace

KnResult is_kn_definable(const BaseKSet& x, const ClassifyOptions& opts) {
  if (opts.bound < 1) throw InvalidArgument("bound must be positive");
  const Automaton dfa = trim(x.padded_dfa());
  KnResult out;
  out.definable = true;
  if (dfa.num_states() == 0) return out;
  const auto scc = scc_decompose(dfa);
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    SccEvidence e;
    e.component = c;
    e.states = scc.components[c];
    e.leaf = scc.leaf[c];
    e.cyclic = scc.cyclic[c];
    e.completeness = is_complete_scc(dfa, e.states);
    e.representative = e.states.front();
    const StateVerdict v = test_state(dfa, e.representative, e.leaf, opts.bound);
    e.sparse = v.sparse;
    e.congruence = v.congruence;
    e.periodic = v.periodic;
    e.definable = v.definable;
    e.bound_limited = v.bound_limited;
    if (opts.all_states)
      for (std::size_t i = 1; i < e.states.size(); ++i) {
        const StateVerdict w = test_state(dfa, e.states[i], e.leaf, opts.bound);
        if (w.sparse != v.sparse || w.definable != v.definable) e.states_agree = false;
      }
    if (!e.definable && out.definable) {
      out.definable = false;
      out.failing_state = e.representative;
      out.bound_limited = e.bound_limited;
    }
    out.evidence.push_back(std::move(e));
  }
  return out;
}

ClassificationReport classify(const BaseKSet& x, const ClassifyOptions& opts) {
  ClassificationReport r;
  r.bound = opts.bound;
  r.dfa_states = trim(x.padded_dfa()).num_states();
  const auto per = logic::is_eventually_periodic(x);
  if (per.periodic) {
    r.verdict = Verdict::Presburger;
    r.periodicity = std::make_pair(per.period, per.threshold);
    return r;
  }
  KnResult kn = is_kn_definable(x, opts);
  r.scc_evidence = std::move(kn.evidence);
  if (kn.definable) {
    r.verdict = Verdict::KnInterdefinable;
  } else {
    r.verdict = Verdict::DefinesVk;
    r.failing_state = kn.failing_state;
    r.bound_limited = kn.bound_limited;
  }
  return r;
}

// --- decomposition -------------------------------------------------------------------

SemenovDecomposition semenov_decompose(const BaseKSet& x, const ClassifyOptions& opts, std::size_t max_branches) {
  if (!is_kn_definable(x, opts).definable) throw DomainError("X is not definable in (N, +, k^N)");
  const Automaton dfa = trim(x.padded_dfa());
  const int k = x.radix();
  SemenovDecomposition out;
  if (dfa.num_states() == 0) {
    out.verified = true;
    return out;
  }
  const auto scc = scc_decompose(dfa);

  std::vector<SemenovLink> chain;
  auto link = [&](State p, State q, std::optional<Symbol> sigma) {
    SemenovLink l;
    l.p = p;
    l.q = q;
    l.language = path_language(dfa, p, q);
    l.sparse = is_sparse(l.language);
    l.sigma = sigma;
    return l;
  };
  auto walk = [&](auto&& self, State p) -> void {
    const std::size_t c = scc.component_of[p];
    for (State q : scc.components[c]) {
      if (dfa.is_final(q)) {
        if (out.branches.size() >= max_branches) throw LimitExceeded("too many decomposition branches");
        chain.push_back(link(p, q, std::nullopt));
        out.branches.push_back({chain});
        chain.pop_back();
      }
      for (Symbol s = 0; s < dfa.alphabet_size(); ++s) {
        const State t = dfa.next(q, s);
        if (t == kNoState || scc.component_of[t] == c) continue;
        chain.push_back(link(p, q, s));
        if (!chain.back().sparse) throw Error("internal: non-sparse link before the tail");
        self(self, t);
        chain.pop_back();
      }
    }
  };
  walk(walk, dfa.initial().front());

  std::optional<Automaton> all;
  for (const auto& branch : out.branches) {
    Automaton lang = branch.links.front().language;
    for (std::size_t i = 0; i + 1 < branch.links.size(); ++i) {
      const Symbol sigma[] = {*branch.links[i].sigma};
      lang = concatenate(concatenate(lang, single_word(k, 1, sigma)), branch.links[i + 1].language);
    }
    all = all ? unite(*all, lang) : lang;
  }
  out.verified = all && equivalent(*all, dfa);
  return out;
}

// --- cycle membership from X ---------------------------------------------------------

CycleMembershipCheck::CycleMembershipCheck(const BaseKSet& x) : x_(x) {
  if (logic::is_eventually_periodic(x).periodic) throw DomainError("X is eventually periodic");
  const Automaton& d = x.padded_dfa();
  const std::size_t n = d.num_states();
  const int k = x.radix();

  // Shortest prefixes by breadth-first search, digits ascending.
  prefixes_.assign(n, Word{});
  std::vector<bool> seen(n, false);
  std::deque<State> queue{d.initial().front()};
  seen[d.initial().front()] = true;
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    for (Symbol s = 0; s < static_cast<Symbol>(k); ++s) {
      const State t = d.next(q, s);
      if (t == kNoState || seen[t]) continue;
      seen[t] = true;
      prefixes_[t] = prefixes_[q];
      prefixes_[t].push_back(s);
      queue.push_back(t);
    }
  }

  // Separating words for every pair among the states and the dead state:
  // backward search over pairs from the pairs split by ε.
  const State dead = static_cast<State>(n);
  auto step = [&](State q, Symbol s) { return q == dead ? dead : (d.next(q, s) == kNoState ? dead : d.next(q, s)); };
  auto fin = [&](State q) { return q != dead && d.is_final(q); };
  const std::size_t m = n + 1;
  std::vector<std::optional<Word>> sep(m * m);
  for (State a = 0; a < m; ++a)
    for (State b = a + 1; b < m; ++b)
      if (fin(a) != fin(b)) {
        sep[a * m + b] = Word{};
      }
  // Relax until no shorter separation appears (pairs are few).
  for (bool changed = true; changed;) {
    changed = false;
    for (State a = 0; a < m; ++a)
      for (State b = a + 1; b < m; ++b)
        for (Symbol s = 0; s < static_cast<Symbol>(k); ++s) {
          State ta = step(a, s), tb = step(b, s);
          if (ta == tb) continue;
          if (ta > tb) std::swap(ta, tb);
          const auto& inner = sep[ta * m + tb];
          if (!inner) continue;
          auto& cur = sep[a * m + b];
          if (cur && cur->size() <= inner->size() + 1) continue;
          Word w{s};
          w.insert(w.end(), inner->begin(), inner->end());
          cur = std::move(w);
          changed = true;
        }
  }
  std::set<Word> words;
  for (State a = 0; a < m; ++a)
    for (State b = a + 1; b < m; ++b) {
      if (!sep[a * m + b]) throw Error("internal: padded DFA is not minimal");
      words.insert(*sep[a * m + b]);
    }
  separators_.assign(words.begin(), words.end());
  zero_bound_ = m;
  for (State q = 0; q < n; ++q) cycle_sets_.emplace_back(path_language(d, q, q));
}

const Word& CycleMembershipCheck::prefix(State q) const {
  if (q >= prefixes_.size()) throw InvalidArgument("state " + std::to_string(q) + " out of range");
  return prefixes_[q];
}

bool CycleMembershipCheck::formula(State q, const BigInt& n) const {
  if (n < 0) throw InvalidArgument("n must be natural");
  const int k = x_.radix();
  const Word& u = prefix(q);
  const BigInt uval = eval_msd(u, k);
  const std::size_t vlen = num_digits(n, k);
  // ∃ i < p: [u 0^i v w_s] ∈ X ⟺ [u w_s] ∈ X for every separator w_s.
  for (std::size_t i = 0; i < zero_bound_; ++i) {
    const BigInt ell = power(k, i + vlen);
    bool all = true;
    for (const Word& w : separators_) {
      const BigInt kw = power(k, w.size());
      const BigInt wval = eval_msd(w, k);
      const bool lhs = x_.contains(uval * ell * kw + kw * n + wval);
      const bool rhs = x_.contains(uval * kw + wval);
      if (lhs != rhs) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool CycleMembershipCheck::direct(State q, const BigInt& n) const {
  if (q >= cycle_sets_.size()) throw InvalidArgument("state " + std::to_string(q) + " out of range");
  return n >= 0 && cycle_sets_[q].contains(n);
}

bool cycle_membership_formula_check(const BaseKSet& x, State q, const BigInt& n) {
  return CycleMembershipCheck(x).formula(q, n);
}

}  // namespace autodich
