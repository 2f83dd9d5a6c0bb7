// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "autodich/automaton.hpp"
#include "autodich/basek.hpp"
#include "autodich/corpus.hpp"
#include "autodich/ffunc.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace autodich {

enum class Verdict { Presburger, KnInterdefinable, DefinesVk };

std::string to_string(Verdict v);

/// Case of state p of x.automaton(): I if δ(p, 0) = {p}, III if δ(p, 0)
/// meets p's component, II otherwise (including no 0-transition).
CycleCase classify_state_case(const BaseKSet& x, State p);

struct SccCompleteness {
  bool complete = true;
  /// First (state, digit) in ascending order with no successor inside the
  /// component.
  std::optional<std::pair<State, Symbol>> missing;
};

SccCompleteness is_complete_scc(const Automaton& a, std::span<const State> component);

/// No-leading-zero words of length ≡ 0 mod ell with value ≡ -c mod m.
inline Automaton build_sigma_lmc(int ell, int m, int c, int k) { return sigma_lmc(ell, m, c, k); }

/// How a congruence language treats leading zeros, copied from the tested
/// language: Free counts them as ordinary digits, NoLeadingZero admits no
/// word starting with 0, ZeroAbsorbing ignores them (0w in L iff w in L,
/// length measured without them).
enum class ZeroMode { Free, NoLeadingZero, ZeroAbsorbing };

std::string to_string(ZeroMode z);

struct CongruenceWitness {
  int m = 1;
  int ell = 1;
  /// (value mod m, length mod ell) pairs of accepted words, ascending.
  std::vector<std::pair<int, int>> residues;
  ZeroMode zeros = ZeroMode::Free;
};

/// The automaton over (value mod m) x (length mod ell) accepting `residues`,
/// with the witness's leading-zero behaviour.
Automaton congruence_automaton(const CongruenceWitness& w, int k);

/// Witness with these m and ell iff the language of `cycle` (one track) is
/// exactly a congruence language; equivalence is checked, not sampled.
std::optional<CongruenceWitness> congruence_test(const Automaton& cycle, int m, int ell);

/// First witness with m, ell <= bound (m outer, ell inner).
std::optional<CongruenceWitness> congruence_search(const Automaton& cycle, int bound);

struct ClassifyOptions {
  /// Bound on m and ell in the congruence search.
  int bound = 24;
  /// Test every state of each component, not just the least.
  bool all_states = false;
};

struct SccEvidence {
  std::size_t component = 0;
  std::vector<State> states;
  bool leaf = false;
  bool cyclic = false;
  SccCompleteness completeness;
  State representative = 0;
  /// Cycle language at the representative.
  bool sparse = false;
  std::optional<CongruenceWitness> congruence;
  /// Set when the cycle set is eventually periodic and neither sparse nor
  /// congruent within the bound.
  std::optional<std::pair<BigInt, BigInt>> periodic;
  bool definable = false;
  bool bound_limited = false;
  /// all_states mode: every state of the component gave the same answer.
  bool states_agree = true;
};

struct KnResult {
  bool definable = false;
  bool bound_limited = false;
  std::optional<State> failing_state;
  std::vector<SccEvidence> evidence;
};

/// (ℕ, +, k^ℕ)-definability on the minimal padded DFA of X: non-leaf cycle
/// languages must be sparse; leaf cycle languages must be sparse, congruent
/// within the bound, or denote an eventually periodic set. A failure found
/// only because no congruence was found is flagged bound_limited.
KnResult is_kn_definable(const BaseKSet& x, const ClassifyOptions& opts = {});

struct ClassificationReport {
  Verdict verdict = Verdict::DefinesVk;
  /// (p, N) when eventually periodic.
  std::optional<std::pair<BigInt, BigInt>> periodicity;
  std::vector<SccEvidence> scc_evidence;
  std::optional<State> failing_state;
  bool bound_limited = false;
  int bound = 24;
  /// States of the minimal padded DFA the evidence refers to.
  std::size_t dfa_states = 0;
};

ClassificationReport classify(const BaseKSet& x, const ClassifyOptions& opts = {});

struct SemenovLink {
  State p = 0;
  State q = 0;
  Automaton language;  // L_{p->q}
  bool sparse = false;
  /// Digit leaving q for the next component; empty for the tail.
  std::optional<Symbol> sigma;
};

struct SemenovBranch {
  std::vector<SemenovLink> links;
};

struct SemenovDecomposition {
  std::vector<SemenovBranch> branches;
  /// The union of the branches equals the padded language of X.
  bool verified = false;
};

/// L = ∪ L_{p1->q1} σ1 L_{p2->q2} ... L_{pn->qn} over the minimal padded DFA.
/// Throws DomainError unless is_kn_definable(x, opts), LimitExceeded past
/// max_branches.
SemenovDecomposition semenov_decompose(const BaseKSet& x, const ClassifyOptions& opts = {},
                                       std::size_t max_branches = 4096);

/// Membership in Z_q = [L_{q->q}]_k for states q of x.padded_dfa(), computed
/// from X alone through separating words, a prefix reaching q and a bounded
/// run of zeros.
class CycleMembershipCheck {
 public:
  /// Throws DomainError if X is eventually periodic.
  explicit CycleMembershipCheck(const BaseKSet& x);

  bool formula(State q, const BigInt& n) const;
  bool direct(State q, const BigInt& n) const;

  const std::vector<Word>& separators() const noexcept { return separators_; }
  /// Shortest, then least, u with δ(q0, u) = q.
  const Word& prefix(State q) const;
  std::size_t zero_bound() const noexcept { return zero_bound_; }
  std::size_t num_states() const noexcept { return prefixes_.size(); }

 private:
  BaseKSet x_;
  std::vector<Word> separators_;
  std::vector<Word> prefixes_;
  std::size_t zero_bound_ = 0;
  std::vector<BaseKSet> cycle_sets_;
};

bool cycle_membership_formula_check(const BaseKSet& x, State q, const BigInt& n);

}  // namespace autodich
