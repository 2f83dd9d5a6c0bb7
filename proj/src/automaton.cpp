// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/automaton.hpp"

#include "autodich/errors.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

namespace autodich {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::size_t h = v.size();
    for (State s : v) h = h * 1000003u ^ (s + 0x9e3779b9u + (h << 6) + (h >> 2));
    return h;
  }
};

void sort_unique(std::vector<State>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void require_same_alphabet(const Automaton& a, const Automaton& b) {
  if (a.radix() != b.radix() || a.tracks() != b.tracks()) {
    throw InvalidArgument("automata differ in radix or track count (" + std::to_string(a.radix()) +
                          "/" + std::to_string(a.tracks()) + " vs " + std::to_string(b.radix()) +
                          "/" + std::to_string(b.tracks()) + ")");
  }
}

void check_state(const Automaton& a, State q) {
  if (q >= a.num_states()) {
    throw InvalidArgument("state " + std::to_string(q) + " out of range (automaton has " +
                          std::to_string(a.num_states()) + " states)");
  }
}

}  // namespace

// --- Automaton -------------------------------------------------------------

bool Automaton::is_initial(State q) const {
  return std::binary_search(initial_.begin(), initial_.end(), q);
}

std::vector<State> Automaton::finals() const {
  std::vector<State> out;
  for (State q = 0; q < num_states_; ++q)
    if (finals_[q]) out.push_back(q);
  return out;
}

Symbol Automaton::encode_symbol(std::span<const int> digits) const {
  if (digits.size() != static_cast<std::size_t>(tracks_))
    throw InvalidArgument("symbol has " + std::to_string(digits.size()) + " components, expected " +
                          std::to_string(tracks_));
  Symbol s = 0;
  for (std::size_t j = digits.size(); j-- > 0;) {
    if (digits[j] < 0 || digits[j] >= radix_)
      throw InvalidArgument("digit " + std::to_string(digits[j]) + " outside [0, " +
                            std::to_string(radix_ - 1) + "]");
    s = s * static_cast<Symbol>(radix_) + static_cast<Symbol>(digits[j]);
  }
  return s;
}

std::vector<int> Automaton::decode_symbol(Symbol s) const {
  std::vector<int> digits(static_cast<std::size_t>(tracks_));
  for (int j = 0; j < tracks_; ++j) {
    digits[static_cast<std::size_t>(j)] = static_cast<int>(s % static_cast<Symbol>(radix_));
    s /= static_cast<Symbol>(radix_);
  }
  return digits;
}

std::size_t alphabet_size_for(int radix, int tracks) {
  if (radix < 2) throw InvalidArgument("radix must be at least 2, got " + std::to_string(radix));
  if (tracks < 0) throw InvalidArgument("track count must be non-negative");
  std::size_t size = 1;
  for (int j = 0; j < tracks; ++j) {
    size *= static_cast<std::size_t>(radix);
    if (size > kMaxAlphabet)
      throw LimitExceeded("alphabet radix^tracks = " + std::to_string(radix) + "^" +
                          std::to_string(tracks) + " exceeds the supported size");
  }
  return size;
}

// --- AutomatonBuilder ------------------------------------------------------

AutomatonBuilder::AutomatonBuilder(int radix, int tracks, std::size_t num_states)
    : radix_(radix),
      tracks_(tracks),
      alphabet_(alphabet_size_for(radix, tracks)),
      finals_(num_states, 0),
      edges_(num_states) {}

State AutomatonBuilder::add_state(bool is_final) {
  finals_.push_back(is_final ? 1 : 0);
  edges_.emplace_back();
  return static_cast<State>(finals_.size() - 1);
}

void AutomatonBuilder::check_state(State q) const {
  if (q >= finals_.size())
    throw InvalidArgument("state " + std::to_string(q) + " out of range (" +
                          std::to_string(finals_.size()) + " states)");
}

void AutomatonBuilder::add_initial(State q) {
  check_state(q);
  initial_.push_back(q);
}

void AutomatonBuilder::set_final(State q, bool value) {
  check_state(q);
  finals_[q] = value ? 1 : 0;
}

void AutomatonBuilder::add_transition(State from, Symbol s, State to) {
  check_state(from);
  check_state(to);
  if (s >= alphabet_)
    throw InvalidArgument("symbol " + std::to_string(s) + " outside alphabet of size " +
                          std::to_string(alphabet_));
  edges_[from].emplace_back(s, to);
}

Automaton AutomatonBuilder::build() const& {
  AutomatonBuilder copy = *this;
  return std::move(copy).build();
}

Automaton AutomatonBuilder::build() && {
  Automaton a;
  a.radix_ = radix_;
  a.tracks_ = tracks_;
  a.alphabet_ = alphabet_;
  a.num_states_ = finals_.size();
  a.initial_ = std::move(initial_);
  sort_unique(a.initial_);
  a.finals_ = std::move(finals_);
  a.offsets_.assign(a.num_states_ * a.alphabet_ + 1, 0);
  bool deterministic = a.initial_.size() == 1;
  bool complete = deterministic;
  for (State q = 0; q < a.num_states_; ++q) {
    auto& e = edges_[q];
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  if (a.num_states_ * a.alphabet_ > std::numeric_limits<std::uint32_t>::max() / 2)
    throw LimitExceeded("transition table too large");
  std::size_t total = 0;
  for (State q = 0; q < a.num_states_; ++q) total += edges_[q].size();
  a.targets_.reserve(total);
  for (State q = 0; q < a.num_states_; ++q) {
    const auto& e = edges_[q];
    std::size_t idx = 0;
    for (Symbol s = 0; s < a.alphabet_; ++s) {
      const std::size_t cell = static_cast<std::size_t>(q) * a.alphabet_ + s;
      std::size_t count = 0;
      while (idx < e.size() && e[idx].first == s) {
        a.targets_.push_back(e[idx].second);
        ++idx;
        ++count;
      }
      if (count > 1) deterministic = false;
      if (count != 1) complete = false;
      a.offsets_[cell + 1] = static_cast<std::uint32_t>(a.targets_.size());
    }
  }
  a.deterministic_ = deterministic;
  a.complete_ = deterministic && complete;
  edges_.clear();
  return a;
}

// --- running ---------------------------------------------------------------

std::vector<State> step(const Automaton& a, std::span<const State> from, Symbol s) {
  std::vector<State> out;
  for (State q : from) {
    auto succ = a.successors(q, s);
    out.insert(out.end(), succ.begin(), succ.end());
  }
  sort_unique(out);
  return out;
}

std::vector<State> run(const Automaton& a, std::span<const State> from,
                       std::span<const Symbol> w) {
  std::vector<State> cur(from.begin(), from.end());
  sort_unique(cur);
  for (Symbol s : w) {
    if (s >= a.alphabet_size()) throw InvalidArgument("symbol outside alphabet");
    cur = step(a, cur, s);
    if (cur.empty()) break;
  }
  return cur;
}

bool any_final(const Automaton& a, std::span<const State> states) {
  return std::any_of(states.begin(), states.end(), [&](State q) { return a.is_final(q); });
}

bool accepts(const Automaton& a, std::span<const Symbol> w) {
  return any_final(a, run(a, a.initial(), w));
}

// --- structural helpers ----------------------------------------------------

namespace {

AutomatonBuilder copy_transitions(const Automaton& a) {
  AutomatonBuilder b(a.radix(), a.tracks(), a.num_states());
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State t : a.successors(q, s)) b.add_transition(q, s, t);
  return b;
}

}  // namespace

Automaton with_initial_final(const Automaton& a, std::span<const State> initial,
                             std::span<const State> finals) {
  AutomatonBuilder b = copy_transitions(a);
  for (State q : initial) b.add_initial(q);
  for (State q : finals) b.set_final(q);
  return std::move(b).build();
}

std::vector<bool> reachable_from(const Automaton& a, std::span<const State> from) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<State> stack;
  for (State q : from) {
    check_state(a, q);
    if (!seen[q]) {
      seen[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State t : a.successors(q, s))
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
  }
  return seen;
}

std::vector<bool> coreachable_to(const Automaton& a, std::span<const State> to) {
  std::vector<std::vector<State>> preds(a.num_states());
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State t : a.successors(q, s)) preds[t].push_back(q);
  std::vector<bool> seen(a.num_states(), false);
  std::vector<State> stack;
  for (State q : to) {
    check_state(a, q);
    if (!seen[q]) {
      seen[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : preds[q])
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
  }
  return seen;
}

namespace {

/// Keeps the states flagged in `keep`, renumbered in ascending order.
Automaton restrict_to(const Automaton& a, const std::vector<bool>& keep) {
  std::vector<State> index(a.num_states(), kNoState);
  State next = 0;
  for (State q = 0; q < a.num_states(); ++q)
    if (keep[q]) index[q] = next++;
  AutomatonBuilder b(a.radix(), a.tracks(), next);
  for (State q = 0; q < a.num_states(); ++q) {
    if (index[q] == kNoState) continue;
    if (a.is_final(q)) b.set_final(index[q]);
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State t : a.successors(q, s))
        if (index[t] != kNoState) b.add_transition(index[q], s, index[t]);
  }
  for (State q : a.initial())
    if (index[q] != kNoState) b.add_initial(index[q]);
  return std::move(b).build();
}

}  // namespace

Automaton trim(const Automaton& a) {
  auto fwd = reachable_from(a, a.initial());
  auto fin = a.finals();
  auto bwd = coreachable_to(a, fin);
  std::vector<bool> keep(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) keep[q] = fwd[q] && bwd[q];
  return restrict_to(a, keep);
}

Automaton complete(const Automaton& a) {
  if (!a.is_deterministic()) return determinize(a);
  if (a.is_complete()) return a;
  AutomatonBuilder b = copy_transitions(a);
  State sink = b.add_state(false);
  for (Symbol s = 0; s < a.alphabet_size(); ++s) b.add_transition(sink, s, sink);
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      if (a.successors(q, s).empty()) b.add_transition(q, s, sink);
  for (State q : a.initial()) b.add_initial(q);
  for (State q = 0; q < a.num_states(); ++q)
    if (a.is_final(q)) b.set_final(q);
  return std::move(b).build();
}

Automaton complement(const Automaton& a) {
  Automaton c = complete(a);
  AutomatonBuilder b = copy_transitions(c);
  for (State q : c.initial()) b.add_initial(q);
  for (State q = 0; q < c.num_states(); ++q) b.set_final(q, !c.is_final(q));
  return std::move(b).build();
}

Automaton concatenate(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  const State off = static_cast<State>(a.num_states());
  AutomatonBuilder out(a.radix(), a.tracks(), a.num_states() + b.num_states());
  const bool eps_a = any_final(a, a.initial());
  const bool eps_b = any_final(b, b.initial());
  for (State q = 0; q < a.num_states(); ++q) {
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State t : a.successors(q, s)) out.add_transition(q, s, t);
    if (a.is_final(q)) {
      if (eps_b) out.set_final(q);
      for (State i : b.initial())
        for (Symbol s = 0; s < b.alphabet_size(); ++s)
          for (State t : b.successors(i, s)) out.add_transition(q, s, off + t);
    }
  }
  for (State q = 0; q < b.num_states(); ++q) {
    if (b.is_final(q)) out.set_final(off + q);
    for (Symbol s = 0; s < b.alphabet_size(); ++s)
      for (State t : b.successors(q, s)) out.add_transition(off + q, s, off + t);
  }
  for (State q : a.initial()) out.add_initial(q);
  if (eps_a)
    for (State q : b.initial()) out.add_initial(off + q);
  return std::move(out).build();
}

Automaton unite(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  const State off = static_cast<State>(a.num_states());
  AutomatonBuilder out(a.radix(), a.tracks(), a.num_states() + b.num_states());
  for (State q = 0; q < a.num_states(); ++q) {
    if (a.is_final(q)) out.set_final(q);
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State t : a.successors(q, s)) out.add_transition(q, s, t);
  }
  for (State q = 0; q < b.num_states(); ++q) {
    if (b.is_final(q)) out.set_final(off + q);
    for (Symbol s = 0; s < b.alphabet_size(); ++s)
      for (State t : b.successors(q, s)) out.add_transition(off + q, s, off + t);
  }
  for (State q : a.initial()) out.add_initial(q);
  for (State q : b.initial()) out.add_initial(off + q);
  return std::move(out).build();
}

Automaton single_word(int radix, int tracks, std::span<const Symbol> w) {
  AutomatonBuilder b(radix, tracks, w.size() + 1);
  for (std::size_t i = 0; i < w.size(); ++i)
    b.add_transition(static_cast<State>(i), w[i], static_cast<State>(i + 1));
  b.add_initial(0);
  b.set_final(static_cast<State>(w.size()));
  return std::move(b).build();
}

Automaton universal_language(int radix, int tracks) {
  AutomatonBuilder b(radix, tracks, 1);
  for (Symbol s = 0; s < b.alphabet_size(); ++s) b.add_transition(0, s, 0);
  b.add_initial(0);
  b.set_final(0);
  return std::move(b).build();
}

Automaton empty_language(int radix, int tracks) {
  AutomatonBuilder b(radix, tracks, 1);
  b.add_initial(0);
  return std::move(b).build();
}

// --- algebra ---------------------------------------------------------------

Automaton determinize(const Automaton& a, std::size_t state_cap) {
  std::unordered_map<std::vector<State>, State, VectorHash> index;
  std::vector<std::vector<State>> subsets;
  std::vector<std::pair<Symbol, State>> pending;
  std::vector<std::vector<std::pair<Symbol, State>>> edges;

  auto intern = [&](std::vector<State> set) -> State {
    auto it = index.find(set);
    if (it != index.end()) return it->second;
    if (subsets.size() >= state_cap)
      throw LimitExceeded("determinization exceeded the state cap of " +
                          std::to_string(state_cap));
    const State id = static_cast<State>(subsets.size());
    index.emplace(set, id);
    subsets.push_back(std::move(set));
    edges.emplace_back();
    return id;
  };

  std::vector<State> start(a.initial().begin(), a.initial().end());
  intern(start);
  for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      std::vector<State> nxt = step(a, subsets[cur], s);
      State id = intern(std::move(nxt));
      edges[cur].emplace_back(s, id);
    }
  }
  AutomatonBuilder b(a.radix(), a.tracks(), subsets.size());
  b.add_initial(0);
  for (State q = 0; q < subsets.size(); ++q) {
    if (any_final(a, subsets[q])) b.set_final(q);
    for (auto [s, t] : edges[q]) b.add_transition(q, s, t);
  }
  return std::move(b).build();
}

namespace {

/// Dense partial DFA used internally by minimization.
struct DenseDfa {
  std::size_t n = 0;
  std::size_t alphabet = 0;
  std::int32_t start = -1;
  std::vector<std::int32_t> next;  // n * alphabet, -1 when undefined
  std::vector<std::uint8_t> final;
};

DenseDfa to_dense(const Automaton& d) {
  assert(d.is_deterministic());
  DenseDfa out;
  out.n = d.num_states();
  out.alphabet = d.alphabet_size();
  out.start = static_cast<std::int32_t>(d.initial().front());
  out.next.assign(out.n * out.alphabet, -1);
  out.final.assign(out.n, 0);
  for (State q = 0; q < out.n; ++q) {
    out.final[q] = d.is_final(q) ? 1 : 0;
    for (Symbol s = 0; s < out.alphabet; ++s) {
      State t = d.next(q, s);
      if (t != kNoState) out.next[q * out.alphabet + s] = static_cast<std::int32_t>(t);
    }
  }
  return out;
}

}  // namespace

Automaton minimize(const Automaton& a, std::size_t state_cap) {
  Automaton d = a.is_deterministic() ? a : determinize(a, state_cap);
  d = trim(d);
  if (d.num_states() == 0 || d.initial().empty()) return empty_language(a.radix(), a.tracks());
  DenseDfa dfa = to_dense(d);
  const std::size_t n = dfa.n;
  const std::size_t A = dfa.alphabet;

  // Moore refinement over live states; -1 stands for the (implicit) dead class.
  std::vector<std::int32_t> cls(n);
  for (std::size_t q = 0; q < n; ++q) cls[q] = dfa.final[q] ? 1 : 0;
  std::size_t num_classes = 0;
  {
    bool has0 = false, has1 = false;
    for (auto c : cls) (c ? has1 : has0) = true;
    num_classes = static_cast<std::size_t>(has0) + static_cast<std::size_t>(has1);
  }
  for (;;) {
    std::map<std::vector<std::int32_t>, std::int32_t> sig_index;
    std::vector<std::int32_t> next_cls(n);
    std::vector<std::int32_t> sig(A + 1);
    for (std::size_t q = 0; q < n; ++q) {
      sig[0] = cls[q];
      for (std::size_t s = 0; s < A; ++s) {
        std::int32_t t = dfa.next[q * A + s];
        sig[s + 1] = t < 0 ? -1 : cls[static_cast<std::size_t>(t)];
      }
      auto [it, inserted] =
          sig_index.emplace(sig, static_cast<std::int32_t>(sig_index.size()));
      next_cls[q] = it->second;
    }
    const std::size_t count = sig_index.size();
    cls.swap(next_cls);
    if (count == num_classes) break;
    num_classes = count;
  }

  // Canonical renumbering: BFS from the start class, symbols ascending.
  std::vector<std::int32_t> rep(num_classes, -1);
  for (std::size_t q = 0; q < n; ++q)
    if (rep[static_cast<std::size_t>(cls[q])] < 0)
      rep[static_cast<std::size_t>(cls[q])] = static_cast<std::int32_t>(q);
  std::vector<std::int32_t> order(num_classes, -1);
  std::vector<std::size_t> queue;
  const std::size_t start_cls = static_cast<std::size_t>(cls[static_cast<std::size_t>(dfa.start)]);
  order[start_cls] = 0;
  queue.push_back(start_cls);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t c = queue[head];
    const std::size_t q = static_cast<std::size_t>(rep[c]);
    for (std::size_t s = 0; s < A; ++s) {
      std::int32_t t = dfa.next[q * A + s];
      if (t < 0) continue;
      const std::size_t tc = static_cast<std::size_t>(cls[static_cast<std::size_t>(t)]);
      if (order[tc] < 0) {
        order[tc] = static_cast<std::int32_t>(queue.size());
        queue.push_back(tc);
      }
    }
  }
  AutomatonBuilder b(a.radix(), a.tracks(), queue.size());
  b.add_initial(0);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::size_t q = static_cast<std::size_t>(rep[queue[i]]);
    if (dfa.final[q]) b.set_final(static_cast<State>(i));
    for (std::size_t s = 0; s < A; ++s) {
      std::int32_t t = dfa.next[q * A + s];
      if (t < 0) continue;
      const auto tc = static_cast<std::size_t>(cls[static_cast<std::size_t>(t)]);
      b.add_transition(static_cast<State>(i), static_cast<Symbol>(s),
                       static_cast<State>(order[tc]));
    }
  }
  return std::move(b).build();
}

Automaton boolean_combine(const Automaton& a1, const Automaton& a2, BoolOp op) {
  require_same_alphabet(a1, a2);
  const Automaton d1 = complete(a1);
  const Automaton d2 = complete(a2);
  const std::size_t m2 = d2.num_states();
  std::unordered_map<std::size_t, State> index;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State p, State q) {
    const std::size_t key = static_cast<std::size_t>(p) * m2 + q;
    auto [it, inserted] = index.emplace(key, static_cast<State>(pairs.size()));
    if (inserted) pairs.emplace_back(p, q);
    return it->second;
  };
  intern(d1.initial().front(), d2.initial().front());
  std::vector<std::vector<std::pair<Symbol, State>>> edges;
  for (std::size_t cur = 0; cur < pairs.size(); ++cur) {
    edges.emplace_back();
    auto [p, q] = pairs[cur];
    for (Symbol s = 0; s < d1.alphabet_size(); ++s) {
      State t = intern(d1.next(p, s), d2.next(q, s));
      edges[cur].emplace_back(s, t);
    }
  }
  assert(pairs.size() <= d1.num_states() * d2.num_states());
  AutomatonBuilder b(a1.radix(), a1.tracks(), pairs.size());
  b.add_initial(0);
  for (State i = 0; i < pairs.size(); ++i) {
    const bool f1 = d1.is_final(pairs[i].first);
    const bool f2 = d2.is_final(pairs[i].second);
    bool f = false;
    switch (op) {
      case BoolOp::Union: f = f1 || f2; break;
      case BoolOp::Intersect: f = f1 && f2; break;
      case BoolOp::Difference: f = f1 && !f2; break;
      case BoolOp::Iff: f = f1 == f2; break;
    }
    if (f) b.set_final(i);
    for (auto [s, t] : edges[i]) b.add_transition(i, s, t);
  }
  return std::move(b).build();
}

Automaton left_quotient(const Automaton& a, std::span<const Symbol> u) {
  if (!a.is_deterministic()) throw InvalidArgument("left_quotient requires a deterministic automaton");
  const State target = [&] {
    auto states = run(a, a.initial(), u);
    return states.empty() ? kNoState : states.front();
  }();
  AutomatonBuilder b = copy_transitions(a);
  for (State q = 0; q < a.num_states(); ++q)
    if (a.is_final(q)) b.set_final(q);
  const State fresh = b.add_state(target != kNoState && a.is_final(target));
  if (target != kNoState)
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State t : a.successors(target, s)) b.add_transition(fresh, s, t);
  b.add_initial(fresh);
  return std::move(b).build();
}

Automaton reverse(const Automaton& a) {
  AutomatonBuilder b(a.radix(), a.tracks(), a.num_states());
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State t : a.successors(q, s)) b.add_transition(t, s, q);
  for (State q = 0; q < a.num_states(); ++q)
    if (a.is_final(q)) b.add_initial(q);
  for (State q : a.initial()) b.set_final(q);
  return std::move(b).build();
}

SccDecomposition scc_decompose(const Automaton& a) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<State>> succ(n);
  for (State q = 0; q < n; ++q) {
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State t : a.successors(q, s)) succ[q].push_back(t);
    sort_unique(succ[q]);
  }

  // Iterative Tarjan. Components come out in reverse topological order.
  constexpr std::int64_t kUnvisited = -1;
  std::vector<std::int64_t> number(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::vector<std::vector<State>> reversed;
  std::int64_t counter = 0;
  struct Frame {
    State q;
    std::size_t next_child;
  };
  for (State root = 0; root < n; ++root) {
    if (number[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    number[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_child < succ[f.q].size()) {
        State t = succ[f.q][f.next_child++];
        if (number[t] == kUnvisited) {
          number[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = true;
          frames.push_back({t, 0});
        } else if (on_stack[t]) {
          low[f.q] = std::min(low[f.q], number[t]);
        }
        continue;
      }
      const State q = f.q;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().q] = std::min(low[frames.back().q], low[q]);
      if (low[q] == number[q]) {
        std::vector<State> comp;
        State x;
        do {
          x = stack.back();
          stack.pop_back();
          on_stack[x] = false;
          comp.push_back(x);
        } while (x != q);
        std::sort(comp.begin(), comp.end());
        reversed.push_back(std::move(comp));
      }
    }
  }

  SccDecomposition out;
  out.components.assign(reversed.rbegin(), reversed.rend());
  const std::size_t c = out.components.size();
  out.component_of.assign(n, 0);
  for (std::size_t i = 0; i < c; ++i)
    for (State q : out.components[i]) out.component_of[q] = i;
  out.condensation.assign(c, {});
  out.cyclic.assign(c, false);
  for (State q = 0; q < n; ++q) {
    const std::size_t cq = out.component_of[q];
    for (State t : succ[q]) {
      const std::size_t ct = out.component_of[t];
      if (ct == cq)
        out.cyclic[cq] = true;
      else
        out.condensation[cq].push_back(ct);
    }
  }
  out.leaf.assign(c, false);
  for (std::size_t i = 0; i < c; ++i) {
    auto& e = out.condensation[i];
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    out.leaf[i] = e.empty();
  }
  return out;
}

Automaton path_language(const Automaton& a, State p, State q) {
  check_state(a, p);
  check_state(a, q);
  const State init[] = {p};
  const State fin[] = {q};
  return trim(with_initial_final(a, init, fin));
}

Automaton induced_subautomaton(const Automaton& a, std::span<const State> subset) {
  std::vector<bool> in(a.num_states(), false);
  for (State q : subset) {
    check_state(a, q);
    in[q] = true;
  }
  Automaton restricted = restrict_to(a, in);
  std::vector<State> index(a.num_states(), kNoState);
  State next = 0;
  for (State q = 0; q < a.num_states(); ++q)
    if (in[q]) index[q] = next++;
  std::vector<State> initial;
  for (State q : a.initial())
    if (in[q]) initial.push_back(index[q]);
  for (State q = 0; q < a.num_states(); ++q) {
    if (in[q]) continue;
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State t : a.successors(q, s))
        if (in[t]) initial.push_back(index[t]);
  }
  AutomatonBuilder b = copy_transitions(restricted);
  for (State q = 0; q < restricted.num_states(); ++q)
    if (restricted.is_final(q)) b.set_final(q);
  for (State q : initial) b.add_initial(q);
  return std::move(b).build();
}

bool is_idempotent_word(const Automaton& a, std::span<const Symbol> w) {
  std::vector<Symbol> ww(w.begin(), w.end());
  ww.insert(ww.end(), w.begin(), w.end());
  for (State q = 0; q < a.num_states(); ++q) {
    const State from[] = {q};
    if (run(a, from, w) != run(a, from, ww)) return false;
  }
  return true;
}

bool equivalent(const Automaton& a1, const Automaton& a2) {
  require_same_alphabet(a1, a2);
  return minimize(a1) == minimize(a2);
}

bool is_empty_language(const Automaton& a) {
  auto fwd = reachable_from(a, a.initial());
  for (State q = 0; q < a.num_states(); ++q)
    if (fwd[q] && a.is_final(q)) return false;
  return true;
}

bool is_finite_language(const Automaton& a) {
  Automaton t = trim(a);
  auto scc = scc_decompose(t);
  return std::none_of(scc.cyclic.begin(), scc.cyclic.end(), [](bool c) { return c; });
}

BigInt count_words_upto(const Automaton& a, std::size_t n) {
  Automaton d = minimize(a);
  std::vector<BigInt> cur(d.num_states()), nxt(d.num_states());
  cur[d.initial().front()] = 1;
  BigInt total = 0;
  for (std::size_t len = 0;; ++len) {
    for (State q = 0; q < d.num_states(); ++q)
      if (d.is_final(q)) total += cur[q];
    if (len == n) break;
    for (auto& x : nxt) x = 0;
    for (State q = 0; q < d.num_states(); ++q) {
      if (cur[q] == 0) continue;
      for (Symbol s = 0; s < d.alphabet_size(); ++s) {
        State t = d.next(q, s);
        if (t != kNoState) nxt[t] += cur[q];
      }
    }
    cur.swap(nxt);
  }
  return total;
}

bool is_sparse(const Automaton& a) {
  Automaton d = minimize(a);
  auto scc = scc_decompose(d);
  for (State q = 0; q < d.num_states(); ++q) {
    const std::size_t c = scc.component_of[q];
    std::size_t inner = 0;
    for (Symbol s = 0; s < d.alphabet_size(); ++s) {
      State t = d.next(q, s);
      if (t != kNoState && scc.component_of[t] == c) ++inner;
    }
    if (inner > 1) return false;
  }
  return true;
}

std::optional<Word> shortest_accepted(const Automaton& a) {
  Automaton d = a.is_deterministic() ? a : determinize(a);
  const std::size_t n = d.num_states();
  std::vector<State> parent(n, kNoState);
  std::vector<Symbol> via(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<State> queue;
  const State start = d.initial().front();
  seen[start] = true;
  queue.push_back(start);
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (d.is_final(q)) {
      Word w;
      for (State x = q; x != start; x = parent[x]) w.push_back(via[x]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Symbol s = 0; s < d.alphabet_size(); ++s) {
      State t = d.next(q, s);
      if (t == kNoState || seen[t]) continue;
      seen[t] = true;
      parent[t] = q;
      via[t] = s;
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

}  // namespace autodich
