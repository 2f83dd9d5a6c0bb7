// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace autodich {

using State = std::uint32_t;
/// A letter of the multi-track alphabet. For d tracks over radix k the
/// symbol of the digit tuple (t_0, ..., t_{d-1}) is sum_j t_j * k^j, so
/// track 0 is the least significant position of the index. For one track
/// the symbol is the digit itself.
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr State kNoState = std::numeric_limits<State>::max();

/// Alphabet sizes beyond this are refused (radix^tracks must stay indexable).
inline constexpr std::size_t kMaxAlphabet = std::size_t{1} << 22;

/// Default cap on the number of subsets explored by determinize().
inline constexpr std::size_t kDefaultStateCap = 1'000'000;

/// Finite automaton over the alphabet of d-tuples of base-k digits.
///
/// Immutable once built; see AutomatonBuilder. States are dense indices
/// 0..num_states()-1. Transitions are stored as a compressed table: for each
/// (state, symbol) a sorted, duplicate-free run of targets.
class Automaton {
 public:
  Automaton() = default;

  int radix() const noexcept { return radix_; }
  int tracks() const noexcept { return tracks_; }
  std::size_t alphabet_size() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return num_states_; }

  std::span<const State> initial() const noexcept { return initial_; }
  bool is_initial(State q) const;
  bool is_final(State q) const { return finals_[q] != 0; }
  std::vector<State> finals() const;

  std::span<const State> successors(State q, Symbol s) const {
    const std::size_t cell = static_cast<std::size_t>(q) * alphabet_ + s;
    return {targets_.data() + offsets_[cell], targets_.data() + offsets_[cell + 1]};
  }
  /// Unique successor for deterministic automata; kNoState if undefined.
  State next(State q, Symbol s) const {
    auto succ = successors(q, s);
    return succ.empty() ? kNoState : succ.front();
  }

  /// |I| = 1 and every (state, symbol) has at most one target.
  bool is_deterministic() const noexcept { return deterministic_; }
  /// Deterministic and every (state, symbol) has exactly one target.
  bool is_complete() const noexcept { return complete_; }

  std::size_t num_transitions() const noexcept { return targets_.size(); }

  Symbol encode_symbol(std::span<const int> digits) const;
  std::vector<int> decode_symbol(Symbol s) const;

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  friend class AutomatonBuilder;

  int radix_ = 2;
  int tracks_ = 1;
  std::size_t alphabet_ = 2;
  std::size_t num_states_ = 0;
  std::vector<State> initial_;
  std::vector<std::uint8_t> finals_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<State> targets_;
  bool deterministic_ = false;
  bool complete_ = false;
};

/// Mutable staging area for an Automaton; build() validates and freezes.
class AutomatonBuilder {
 public:
  AutomatonBuilder(int radix, int tracks, std::size_t num_states = 0);

  State add_state(bool is_final = false);
  void add_initial(State q);
  void set_final(State q, bool value = true);
  void add_transition(State from, Symbol s, State to);

  int radix() const noexcept { return radix_; }
  int tracks() const noexcept { return tracks_; }
  std::size_t alphabet_size() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return finals_.size(); }

  Automaton build() &&;
  Automaton build() const&;

 private:
  void check_state(State q) const;

  int radix_;
  int tracks_;
  std::size_t alphabet_;
  std::vector<State> initial_;
  std::vector<std::uint8_t> finals_;
  std::vector<std::vector<std::pair<Symbol, State>>> edges_;
};

/// alphabet size radix^tracks, throwing InvalidArgument / LimitExceeded.
std::size_t alphabet_size_for(int radix, int tracks);

// --- running words -------------------------------------------------------

std::vector<State> step(const Automaton& a, std::span<const State> from, Symbol s);
std::vector<State> run(const Automaton& a, std::span<const State> from, std::span<const Symbol> w);
bool accepts(const Automaton& a, std::span<const Symbol> w);
bool any_final(const Automaton& a, std::span<const State> states);

// --- structural helpers --------------------------------------------------

/// Same transitions with the given initial and final sets.
Automaton with_initial_final(const Automaton& a, std::span<const State> initial,
                             std::span<const State> finals);
/// States reachable from `from` (inclusive).
std::vector<bool> reachable_from(const Automaton& a, std::span<const State> from);
/// States from which some state of `to` is reachable (inclusive).
std::vector<bool> coreachable_to(const Automaton& a, std::span<const State> to);
/// Restriction to states both reachable and co-reachable. The result of an
/// empty language has zero states.
Automaton trim(const Automaton& a);
/// Deterministic copy with an explicit sink where transitions were missing.
Automaton complete(const Automaton& a);
Automaton complement(const Automaton& a);
Automaton concatenate(const Automaton& a, const Automaton& b);
Automaton unite(const Automaton& a, const Automaton& b);
/// Automaton accepting exactly the one word w.
Automaton single_word(int radix, int tracks, std::span<const Symbol> w);
Automaton universal_language(int radix, int tracks);
Automaton empty_language(int radix, int tracks);

// --- algebra ---------------------------------------------------------------

Automaton determinize(const Automaton& a, std::size_t state_cap = kDefaultStateCap);
/// Trim, deterministic, partial, minimal. States are numbered in BFS order
/// from the initial state (symbols ascending), so equal languages give equal
/// results. The empty language yields one non-final state without edges.
Automaton minimize(const Automaton& a, std::size_t state_cap = kDefaultStateCap);

enum class BoolOp { Union, Intersect, Difference, Iff };
/// Reachable product of the two completed determinizations (not trimmed).
Automaton boolean_combine(const Automaton& a1, const Automaton& a2, BoolOp op);

/// DFA for {v : uv in L(a)} with one fresh initial state on top of a's
/// states (at most M + 1 states). Requires a deterministic.
Automaton left_quotient(const Automaton& a, std::span<const Symbol> u);
Automaton reverse(const Automaton& a);

struct SccDecomposition {
  /// components[c] lists the states of component c in ascending order.
  std::vector<std::vector<State>> components;
  /// component_of[q] is the component index containing q.
  std::vector<std::size_t> component_of;
  /// successors[c]: components reachable by one edge from c (excluding c).
  std::vector<std::vector<std::size_t>> condensation;
  std::vector<bool> leaf;

  /// True iff some edge stays inside component c (a self-loop counts).
  std::vector<bool> cyclic;
};

/// Components are listed in topological order of the condensation
/// (every condensation edge goes from a lower to a higher index).
SccDecomposition scc_decompose(const Automaton& a);

/// L_{p->q}: words with a run from p to q, as a trimmed automaton.
Automaton path_language(const Automaton& a, State p, State q);

/// Induced subautomaton on `subset` (states renumbered in ascending order of
/// the subset). Initial states are those of I in the subset plus those with
/// an incoming edge from outside it.
Automaton induced_subautomaton(const Automaton& a, std::span<const State> subset);

bool is_idempotent_word(const Automaton& a, std::span<const Symbol> w);
bool equivalent(const Automaton& a1, const Automaton& a2);
bool is_empty_language(const Automaton& a);
bool is_finite_language(const Automaton& a);
/// |L_{<=n}|, the number of accepted words of length at most n.
BigInt count_words_upto(const Automaton& a, std::size_t n);
/// Polynomial growth test: every strongly connected component of the
/// minimal trim DFA is a simple cycle or acyclic.
bool is_sparse(const Automaton& a);

/// Shortest, then lexicographically least, accepted word.
std::optional<Word> shortest_accepted(const Automaton& a);

}  // namespace autodich
