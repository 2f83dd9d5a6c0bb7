// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/basek.hpp"

#include "autodich/errors.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace autodich {

namespace {

void check_radix(int k) {
  if (k < 2) throw InvalidArgument("radix must be at least 2, got " + std::to_string(k));
}

constexpr std::string_view kDigitChars = "0123456789abcdefghijklmnopqrstuvwxyz";

}  // namespace

BigInt eval_msd(std::span<const Symbol> w, int k) {
  check_radix(k);
  BigInt value = 0;
  for (Symbol d : w) {
    if (d >= static_cast<Symbol>(k))
      throw InvalidArgument("digit " + std::to_string(d) + " outside radix " + std::to_string(k));
    value = value * k + d;
  }
  return value;
}

Word canonical_expansion(const BigInt& n, int k) {
  check_radix(k);
  if (n < 0) throw InvalidArgument("negative value has no expansion");
  Word w;
  BigInt m = n;
  while (m > 0) {
    w.push_back(static_cast<Symbol>(static_cast<unsigned>(m % k)));
    m /= k;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

Word padded_expansion(const BigInt& n, int k, std::size_t length) {
  Word w = canonical_expansion(n, k);
  if (w.size() > length)
    throw InvalidArgument("value needs " + std::to_string(w.size()) + " digits, only " +
                          std::to_string(length) + " available");
  w.insert(w.begin(), length - w.size(), 0);
  return w;
}

BigInt power(int k, std::size_t e) {
  BigInt r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= k;
  return r;
}

std::size_t num_digits(const BigInt& n, int k) {
  std::size_t d = 0;
  for (BigInt m = n; m > 0; m /= k) ++d;
  return d;
}

std::string format_word(std::span<const Symbol> w, int k) {
  std::string out;
  if (k <= static_cast<int>(kDigitChars.size())) {
    for (Symbol d : w) out += kDigitChars.at(d);
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w[i]);
  }
  return out;
}

Word parse_word(std::string_view text, int k) {
  check_radix(k);
  Word w;
  if (k > static_cast<int>(kDigitChars.size())) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      const std::string part(text.substr(pos, end - pos));
      std::size_t used = 0;
      unsigned long d = 0;
      try {
        d = std::stoul(part, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != part.size() || part.empty() || d >= static_cast<unsigned long>(k))
        throw InvalidArgument("bad digit '" + part + "' for radix " + std::to_string(k));
      w.push_back(static_cast<Symbol>(d));
      pos = end + 1;
    }
    return w;
  }
  for (char c : text) {
    const auto idx = kDigitChars.find(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (idx == std::string_view::npos || idx >= static_cast<std::size_t>(k))
      throw InvalidArgument(std::string("bad digit '") + c + "' for radix " + std::to_string(k));
    w.push_back(static_cast<Symbol>(idx));
  }
  return w;
}

std::vector<State> zero_closure(const Automaton& a, std::span<const State> from) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<State> stack;
  for (State q : from)
    if (!seen[q]) {
      seen[q] = true;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State t : a.successors(q, 0))
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
  }
  std::vector<State> out;
  for (State q = 0; q < a.num_states(); ++q)
    if (seen[q]) out.push_back(q);
  return out;
}

namespace {

/// Minimal DFA of 0* · {canonical words of members}.
Automaton build_padded(const Automaton& a, const std::vector<State>& z) {
  AutomatonBuilder b(a.radix(), 1, a.num_states());
  for (State q = 0; q < a.num_states(); ++q) {
    if (a.is_final(q)) b.set_final(q);
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State t : a.successors(q, s)) b.add_transition(q, s, t);
  }
  const State start = b.add_state(any_final(a, z));
  b.add_transition(start, 0, start);
  for (Symbol s = 1; s < a.alphabet_size(); ++s)
    for (State t : step(a, z, s)) b.add_transition(start, s, t);
  b.add_initial(start);
  return minimize(std::move(b).build());
}

}  // namespace

BaseKSet::BaseKSet(Automaton a) : automaton_(std::move(a)) {
  if (automaton_.tracks() != 1)
    throw InvalidArgument("a set of naturals needs a one-track automaton, got " +
                          std::to_string(automaton_.tracks()) + " tracks");
  zero_closure_ = autodich::zero_closure(automaton_, automaton_.initial());
  padded_ = std::make_shared<const Automaton>(build_padded(automaton_, zero_closure_));
}

bool BaseKSet::contains(const BigInt& n) const {
  if (n < 0) return false;
  const Word w = canonical_expansion(n, radix());
  return any_final(automaton_, run(automaton_, zero_closure_, w));
}

std::vector<BigInt> BaseKSet::enumerate(const BigInt& upto) const {
  std::vector<BigInt> out;
  const Automaton& d = *padded_;
  for (BigInt n = 0; n <= upto; ++n) {
    State q = d.initial().front();
    for (Symbol s : canonical_expansion(n, radix())) {
      q = d.next(q, s);
      if (q == kNoState) break;
    }
    if (q != kNoState && d.is_final(q)) out.push_back(n);
  }
  return out;
}

BaseKSet base_power_transform(const BaseKSet& x, int i) {
  if (i < 1) throw InvalidArgument("base power exponent must be at least 1");
  const Automaton& a = x.automaton();
  const int k = a.radix();
  const std::size_t big = alphabet_size_for(k, i);
  if (big > static_cast<std::size_t>(std::numeric_limits<int>::max()))
    throw LimitExceeded("radix k^i too large");
  AutomatonBuilder b(static_cast<int>(big), 1, a.num_states());
  for (State q = 0; q < a.num_states(); ++q) {
    if (a.is_final(q)) b.set_final(q);
    const State from[] = {q};
    for (Symbol D = 0; D < big; ++D) {
      Word block = padded_expansion(D, k, static_cast<std::size_t>(i));
      for (State t : run(a, from, block)) b.add_transition(q, D, t);
    }
  }
  // The leading block is read without its leading zeros.
  const auto& z = x.zero_closure();
  const State start = b.add_state(any_final(a, z));
  b.add_transition(start, 0, start);
  for (Symbol D = 1; D < big; ++D)
    for (State t : run(a, z, canonical_expansion(D, k))) b.add_transition(start, D, t);
  b.add_initial(start);
  return BaseKSet(std::move(b).build());
}

Normalization find_normalization(const BaseKSet& x, State p, int cap) {
  const Automaton& a = x.automaton();
  if (p >= a.num_states()) throw InvalidArgument("state " + std::to_string(p) + " out of range");
  const int k = a.radix();
  {
    std::vector<State> firsts;
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State t : a.successors(p, s)) firsts.push_back(t);
    if (!reachable_from(a, firsts)[p])
      throw DomainError("cycle language at state " + std::to_string(p) +
                        " is {ε}; no normalization exists");
  }
  for (int i = 1; i <= cap; ++i) {
    const std::size_t big = alphabet_size_for(k, i);
    const Word zeros(static_cast<std::size_t>(i), 0);
    const Word tops(static_cast<std::size_t>(i), static_cast<Symbol>(k - 1));
    if (!is_idempotent_word(a, zeros) || !is_idempotent_word(a, tops)) continue;
    // Least nonzero block D with δ(p, D) = {p}, falling back to D = 0.
    std::optional<Symbol> found;
    const State from[] = {p};
    for (Symbol D = 1; D < big && !found; ++D) {
      auto t = run(a, from, padded_expansion(D, k, static_cast<std::size_t>(i)));
      if (t.size() == 1 && t.front() == p) found = D;
    }
    if (!found) {
      auto t = run(a, from, zeros);
      if (t.size() == 1 && t.front() == p) found = 0;
    }
    if (!found) continue;
    return Normalization{i, *found, base_power_transform(x, i)};
  }
  throw LimitExceeded("no normalization with exponent at most " + std::to_string(cap) +
                      " for state " + std::to_string(p));
}

std::size_t KernelFamily::index_of(std::size_t c, const BigInt& j) const {
  if (j < 0 || j >= power(radix, c)) throw InvalidArgument("kernel offset out of range");
  const Word w = padded_expansion(j, radix, c);
  std::vector<std::uint8_t> fin(dfa->num_states(), 0);
  for (State q = 0; q < dfa->num_states(); ++q) {
    const State from[] = {q};
    fin[q] = any_final(*dfa, run(*dfa, from, w)) ? 1 : 0;
  }
  return by_final_set.at(fin);
}

KernelFamily k_kernel(const BaseKSet& x) {
  KernelFamily fam;
  fam.radix = x.radix();
  fam.dfa = std::make_shared<const Automaton>(x.padded_dfa());
  const Automaton& d = *fam.dfa;
  const std::size_t n = d.num_states();

  auto member_for = [&](const std::vector<std::uint8_t>& fin) {
    AutomatonBuilder b(d.radix(), 1, n);
    for (State q = 0; q < n; ++q) {
      if (fin[q]) b.set_final(q);
      for (Symbol s = 0; s < d.alphabet_size(); ++s)
        if (State t = d.next(q, s); t != kNoState) b.add_transition(q, s, t);
    }
    b.add_initial(d.initial().front());
    return BaseKSet(minimize(std::move(b).build()));
  };

  std::vector<std::uint8_t> start(n);
  for (State q = 0; q < n; ++q) start[q] = d.is_final(q) ? 1 : 0;
  std::deque<std::pair<std::vector<std::uint8_t>, std::size_t>> queue;
  fam.by_final_set.emplace(start, 0);
  fam.members.push_back(member_for(start));
  queue.emplace_back(start, 0);
  while (!queue.empty()) {
    auto [fin, depth] = queue.front();
    queue.pop_front();
    fam.depth = std::max(fam.depth, depth);
    for (Symbol s = 0; s < d.alphabet_size(); ++s) {
      // {n : k n + s ∈ S} has final set {q : δ(q, s) ∈ fin}.
      std::vector<std::uint8_t> pre(n, 0);
      for (State q = 0; q < n; ++q) {
        State t = d.next(q, s);
        pre[q] = (t != kNoState && fin[t]) ? 1 : 0;
      }
      if (fam.by_final_set.count(pre)) continue;
      fam.by_final_set.emplace(pre, fam.members.size());
      fam.members.push_back(member_for(pre));
      queue.emplace_back(std::move(pre), depth + 1);
    }
  }
  return fam;
}

}  // namespace autodich
