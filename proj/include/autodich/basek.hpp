// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "autodich/automaton.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace autodich {

/// Value of w read most significant digit first. eval_msd(ε) = 0.
BigInt eval_msd(std::span<const Symbol> w, int k);
/// The word without leading zeros denoting n; canonical_expansion(0) = ε.
Word canonical_expansion(const BigInt& n, int k);
/// Expansion of n left-padded with zeros to exactly `length` digits.
/// Throws InvalidArgument if n needs more digits.
Word padded_expansion(const BigInt& n, int k, std::size_t length);

/// k^e.
BigInt power(int k, std::size_t e);
/// Number of digits of the canonical expansion (0 for n = 0).
std::size_t num_digits(const BigInt& n, int k);

/// Digits as characters 0-9a-z for k <= 36; comma separated otherwise.
std::string format_word(std::span<const Symbol> w, int k);
Word parse_word(std::string_view text, int k);

/// A subset of the naturals given by a one-track automaton: X = [L]_k.
///
/// Membership allows any number of leading zeros, so n is in X iff some
/// 0^j w is in L where w is the canonical expansion of n. The zero closure
/// (states reachable from I by 0*) makes this a single run.
class BaseKSet {
 public:
  explicit BaseKSet(Automaton a);

  const Automaton& automaton() const noexcept { return automaton_; }
  int radix() const noexcept { return automaton_.radix(); }
  const std::vector<State>& zero_closure() const noexcept { return zero_closure_; }

  bool contains(const BigInt& n) const;
  /// X ∩ [0, upto], ascending.
  std::vector<BigInt> enumerate(const BigInt& upto) const;

  /// Minimal DFA of {w : [w]_k ∈ X}; closed under prepending 0.
  const Automaton& padded_dfa() const { return *padded_; }

 private:
  Automaton automaton_;
  std::vector<State> zero_closure_;
  std::shared_ptr<const Automaton> padded_;
};

/// States reachable from `from` by words in 0*.
std::vector<State> zero_closure(const Automaton& a, std::span<const State> from);

/// Same set over radix k^i. States are kept (state q of the result is state
/// q of the input) and digit D reads the i-digit block of D. One fresh
/// initial state is appended; it loops on 0 and reads the leading block
/// without its leading zeros from the zero closure of the input.
BaseKSet base_power_transform(const BaseKSet& x, int i);

struct Normalization {
  int exponent;  // i
  Symbol a;      // distinguished digit over radix k^i
  BaseKSet set;  // base_power_transform(x, i)
};

/// Least i <= cap such that over radix k^i the digits 0 and k^i - 1 are
/// idempotent and some digit D has δ(p, D) = {p}. `a` is the least nonzero
/// such digit, or 0 if only 0 loops at p.
Normalization find_normalization(const BaseKSet& x, State p, int cap = 12);

/// The k-kernel: the sets {n : k^c n + j ∈ X} for all c >= 0, 0 <= j < k^c.
struct KernelFamily {
  std::vector<BaseKSet> members;  // members[0] is X itself
  /// Smallest b such that every member is reached with c <= b.
  std::size_t depth = 0;

  /// Index of the member equal to {n : k^c n + j ∈ X}.
  std::size_t index_of(std::size_t c, const BigInt& j) const;

  int radix = 2;
  std::shared_ptr<const Automaton> dfa;  // padded DFA of X
  std::map<std::vector<std::uint8_t>, std::size_t> by_final_set;
};

KernelFamily k_kernel(const BaseKSet& x);

}  // namespace autodich
