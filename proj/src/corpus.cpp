// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/corpus.hpp"

#include "autodich/errors.hpp"

namespace autodich {

Automaton fig1_automaton() {
  AutomatonBuilder b(3, 1, 3);
  b.add_transition(0, 0, 0);
  b.add_transition(0, 2, 0);
  b.add_transition(0, 1, 2);
  b.add_transition(1, 0, 1);
  b.add_transition(1, 2, 1);
  b.add_transition(1, 1, 2);
  b.add_transition(2, 0, 2);
  b.add_transition(2, 1, 2);
  b.add_transition(2, 2, 1);
  b.add_initial(0);
  b.set_final(2);
  return std::move(b).build();
}

Automaton fig1_cycle_automaton() {
  const Automaton a = fig1_automaton();
  const State q2[] = {2};
  return with_initial_final(a, q2, q2);
}

Automaton multiples_automaton(int k, int m) {
  if (m < 1) throw InvalidArgument("modulus must be positive");
  // State 0 reads nothing yet (value 0, no leading zero allowed); state
  // 1 + r means value ≡ r.
  AutomatonBuilder b(k, 1, static_cast<std::size_t>(m) + 1);
  b.add_initial(0);
  b.set_final(0);
  b.set_final(1);
  for (int d = 1; d < k; ++d) b.add_transition(0, static_cast<Symbol>(d), 1 + static_cast<State>(d % m));
  for (int r = 0; r < m; ++r)
    for (int d = 0; d < k; ++d)
      b.add_transition(1 + static_cast<State>(r), static_cast<Symbol>(d),
                       1 + static_cast<State>((r * k + d) % m));
  return std::move(b).build();
}

Automaton powers_automaton(int k) {
  AutomatonBuilder b(k, 1, 2);
  b.add_initial(0);
  b.set_final(1);
  b.add_transition(0, 1, 1);
  b.add_transition(1, 0, 1);
  return std::move(b).build();
}

Automaton evil_automaton() {
  AutomatonBuilder b(2, 1, 2);
  b.add_initial(0);
  b.set_final(0);
  b.add_transition(0, 0, 0);
  b.add_transition(0, 1, 1);
  b.add_transition(1, 0, 1);
  b.add_transition(1, 1, 0);
  return std::move(b).build();
}

Automaton sigma_lmc(int ell, int m, int c, int k) {
  if (ell < 0 || m < 0) throw InvalidArgument("ell and m must be non-negative");
  if (ell == 0 || m == 0) return empty_language(k, 1);
  // Start state, then (value mod m, length mod ell) for read words.
  const std::size_t cells = static_cast<std::size_t>(m) * static_cast<std::size_t>(ell);
  AutomatonBuilder b(k, 1, cells + 1);
  auto id = [&](int v, int len) {
    return 1 + static_cast<State>(v * ell + len);
  };
  const int target = ((-c) % m + m) % m;
  b.add_initial(0);
  if (target == 0) b.set_final(0);
  for (int d = 1; d < k; ++d) b.add_transition(0, static_cast<Symbol>(d), id(d % m, 1 % ell));
  for (int v = 0; v < m; ++v)
    for (int len = 0; len < ell; ++len) {
      if (v == target && len == 0) b.set_final(id(v, len));
      for (int d = 0; d < k; ++d)
        b.add_transition(id(v, len), static_cast<Symbol>(d), id((v * k + d) % m, (len + 1) % ell));
    }
  return std::move(b).build();
}

Automaton random_automaton(std::mt19937_64& rng, const RandomAutomatonOptions& opts) {
  if (opts.states == 0) throw InvalidArgument("random automaton needs at least one state");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<State> pick(0, static_cast<State>(opts.states - 1));
  AutomatonBuilder b(opts.radix, 1, opts.states);
  b.add_initial(0);
  if (!opts.deterministic && coin(rng) < 0.3) b.add_initial(pick(rng));
  for (State q = 0; q < opts.states; ++q) {
    if (coin(rng) < opts.final_probability) b.set_final(q);
    for (Symbol s = 0; s < b.alphabet_size(); ++s) {
      if (coin(rng) >= opts.density) continue;
      b.add_transition(q, s, pick(rng));
      if (!opts.deterministic && coin(rng) < opts.branching) b.add_transition(q, s, pick(rng));
    }
  }
  return std::move(b).build();
}

}  // namespace autodich
