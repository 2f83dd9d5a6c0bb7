// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "autodich/automaton.hpp"

#include <cstdint>
#include <random>

namespace autodich {

/// Three-state ternary automaton: q0 loops on {0,2} and reads 1 into q2; q1
/// loops on {0,2} and reads 1 into q2; q2 loops on {0,1} and reads 2 into q1.
/// Initial q0, final q2.
Automaton fig1_automaton();
/// fig1_automaton() with initial and final set both {q2}: its language is
/// the cycle language at q2.
Automaton fig1_cycle_automaton();

/// Canonical expansions (no leading zeros; ε for 0) of multiples of m.
Automaton multiples_automaton(int k, int m);
/// 1·0* over radix k, denoting k^ℕ.
Automaton powers_automaton(int k);
/// Binary words with an even number of 1s (the evil numbers, with ε).
Automaton evil_automaton();
/// No-leading-zero words of length ≡ 0 mod ell with value ≡ -c mod m. Empty
/// when ell = 0 or m = 0. ε (length 0, value 0) is included iff c ≡ 0 mod m.
Automaton sigma_lmc(int ell, int m, int c, int k);

/// Random automaton generators (deterministic in the engine state).
struct RandomAutomatonOptions {
  int radix = 2;
  std::size_t states = 3;
  /// Probability that a (state, symbol) pair gets a transition.
  double density = 0.8;
  /// For NFAs, probability of a second target on a defined transition.
  double branching = 0.0;
  double final_probability = 0.4;
  bool deterministic = true;
};

Automaton random_automaton(std::mt19937_64& rng, const RandomAutomatonOptions& opts);

}  // namespace autodich
