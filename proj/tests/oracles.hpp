// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference implementations used to check the library.
// Everything here works on explicit words or integers and shares no code
// with the algorithms under test beyond the Automaton accessors.

#pragma once

#include "autodich/automaton.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using autodich::Automaton;
using autodich::State;
using autodich::Symbol;
using autodich::Word;

/// All words over {0..alphabet-1} of length <= max_len, shortlex order.
inline std::vector<Word> all_words(std::size_t alphabet, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (Symbol s = 0; s < alphabet; ++s) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

/// Direct NFA simulation by explicit state sets.
inline bool accepts(const Automaton& a, const Word& w) {
  std::set<State> cur(a.initial().begin(), a.initial().end());
  for (Symbol s : w) {
    std::set<State> nxt;
    for (State q : cur)
      for (State t : a.successors(q, s)) nxt.insert(t);
    cur.swap(nxt);
  }
  for (State q : cur)
    if (a.is_final(q)) return true;
  return false;
}

/// Value of w read most significant digit first, in 64 bits.
inline std::uint64_t value(const Word& w, int k) {
  std::uint64_t v = 0;
  for (Symbol d : w) v = v * static_cast<std::uint64_t>(k) + d;
  return v;
}

/// Base-k digits of n without leading zeros (empty for 0).
inline Word digits(std::uint64_t n, int k) {
  Word w;
  for (; n > 0; n /= static_cast<std::uint64_t>(k)) w.insert(w.begin(), static_cast<Symbol>(n % k));
  return w;
}

/// n ∈ [L]_k by trying up to `max_pad` leading zeros.
inline bool member(const Automaton& a, std::uint64_t n, std::size_t max_pad) {
  Word w = digits(n, a.radix());
  for (std::size_t j = 0; j <= max_pad; ++j) {
    if (accepts(a, w)) return true;
    w.insert(w.begin(), 0);
  }
  return false;
}

inline std::uint64_t ipow(std::uint64_t k, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= k;
  return r;
}

/// Largest power of k dividing n (n >= 1).
inline std::uint64_t v_k(std::uint64_t n, std::uint64_t k) {
  std::uint64_t p = 1;
  while (n % k == 0) {
    n /= k;
    p *= k;
  }
  return p;
}

/// Least (p, N) with p <= max_p, N <= max_n such that bits[n] == bits[n+p]
/// for all N <= n with n + p < bits.size().
struct Period {
  std::size_t p;
  std::size_t n;
};
inline std::optional<Period> detect_period(const std::vector<bool>& bits, std::size_t max_p,
                                           std::size_t max_n) {
  for (std::size_t p = 1; p <= max_p; ++p) {
    // Last index where the period fails; N is one past it.
    std::size_t first_ok = 0;
    for (std::size_t n = 0; n + p < bits.size(); ++n)
      if (bits[n] != bits[n + p]) first_ok = n + 1;
    if (first_ok <= max_n) return Period{p, first_ok};
  }
  return std::nullopt;
}

/// Run from {p} by explicit state sets; true iff it ends in exactly {p}.
inline bool loops(const Automaton& a, State p, const Word& w) {
  std::set<State> cur{p};
  for (Symbol s : w) {
    std::set<State> nxt;
    for (State q : cur)
      for (State t : a.successors(q, s)) nxt.insert(t);
    cur.swap(nxt);
  }
  return cur == std::set<State>{p};
}

/// n ∈ [L_{p->p}]_k, trying up to |Q| + 1 leading zeros; false for n < 0.
inline bool cycle_member(const Automaton& a, State p, std::int64_t n) {
  if (n < 0) return false;
  Word w = digits(static_cast<std::uint64_t>(n), a.radix());
  for (std::size_t j = 0; j <= a.num_states() + 1; ++j) {
    if (loops(a, p, w)) return true;
    w.insert(w.begin(), 0);
  }
  return false;
}

/// F_R(n) from the definition with every word v listed explicitly.
inline std::uint64_t f_r(const Automaton& a, State p, Symbol digit, std::uint64_t n, std::size_t R) {
  if (n == 0) return 1;
  const int k = a.radix();
  const std::size_t cap = digits(n, k).size();
  auto rep = [&](std::size_t m) {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < m; ++i) v = v * k + digit;
    return v;
  };
  for (std::size_t i = cap + 1; i-- > 0;) {
    bool ok = true;
    for (std::size_t r = 0; r <= R && ok; ++r) {
      const auto kr = static_cast<std::int64_t>(ipow(k, static_cast<unsigned>(r)));
      for (const Word& v : all_words(k, r + i)) {
        const std::size_t j = v.size();
        const auto val = static_cast<std::int64_t>(value(v, k));
        const std::int64_t lhs = j > r ? kr * static_cast<std::int64_t>(n) - rep(j - r) * kr + val
                                       : kr * static_cast<std::int64_t>(n) +
                                             rep(r - j) * static_cast<std::int64_t>(ipow(k, static_cast<unsigned>(j))) + val;
        if (cycle_member(a, p, lhs) != loops(a, p, v)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return ipow(k, static_cast<unsigned>(i));
  }
  return 1;
}

}  // namespace oracle
