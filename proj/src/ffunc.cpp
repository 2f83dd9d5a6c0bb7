// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/ffunc.hpp"

#include "autodich/corpus.hpp"
#include "autodich/errors.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

namespace autodich {

std::string to_string(CycleCase c) {
  switch (c) {
    case CycleCase::I: return "I";
    case CycleCase::II: return "II";
    case CycleCase::III: return "III";
  }
  return "?";
}

std::string to_string(Side s) { return s == Side::Long ? "long" : "short"; }

BigInt v_ka(const BigInt& n, int k, Symbol a) {
  if (n <= 0) throw DomainError("v_ka is defined for n >= 1");
  if (k < 2) throw InvalidArgument("radix must be at least 2");
  if (a >= static_cast<Symbol>(k)) throw InvalidArgument("digit out of range");
  BigInt m = n, result = 1;
  while (m > 0 && m % k == a) {
    m /= k;
    result *= k;
  }
  return result;
}

std::size_t log_k_exact(const BigInt& x, int k) {
  if (x < 1) throw InvalidArgument("not a power of the radix");
  BigInt m = x;
  std::size_t e = 0;
  while (m % k == 0) {
    m /= k;
    ++e;
  }
  if (m != 1) throw InvalidArgument("not a power of the radix");
  return e;
}

// --- context -------------------------------------------------------------------

struct CycleContext::Tables {
  int k = 2;
  // L side: automaton states, dead = nq.
  std::size_t nq = 0;
  std::vector<State> l_delta;
  // X side: padded DFA states, dead = nx.
  std::size_t nx = 0;
  State x_init = 0;
  std::vector<State> x_delta;
  std::vector<std::uint8_t> x_final;
  State p = 0;

  std::size_t pair(State s, State t) const { return static_cast<std::size_t>(s) * (nq + 1) + t; }

  State x_step(State s, Symbol d) const {
    if (s == nx) return s;
    const State n = x_delta[static_cast<std::size_t>(s) * k + d];
    return n == kNoState ? static_cast<State>(nx) : n;
  }
  State l_step(State t, Symbol d) const {
    if (t == nq) return t;
    const State n = l_delta[static_cast<std::size_t>(t) * k + d];
    return n == kNoState ? static_cast<State>(nq) : n;
  }
  State x_run(State s, std::span<const Symbol> w) const {
    for (Symbol d : w) s = x_step(s, d);
    return s;
  }
  State l_run(State t, std::span<const Symbol> w) const {
    for (Symbol d : w) t = l_step(t, d);
    return t;
  }

  /// layer(len)[pair(s, t)]: some word of length len is accepted from
  /// exactly one of s (X side) and t (L side, accepting at p).
  const std::vector<std::uint8_t>& layer(std::size_t len) const {
    std::lock_guard<std::mutex> lock(mu);
    while (layers.size() <= len) {
      std::vector<std::uint8_t> next((nx + 1) * (nq + 1), 0);
      if (layers.empty()) {
        for (State s = 0; s <= nx; ++s)
          for (State t = 0; t <= nq; ++t) {
            const bool xs = s < nx && x_final[s];
            next[pair(s, t)] = xs != (t == p);
          }
      } else {
        const auto& prev = layers.back();
        for (State s = 0; s <= nx; ++s)
          for (State t = 0; t <= nq; ++t)
            for (Symbol d = 0; d < static_cast<Symbol>(k); ++d)
              if (prev[pair(x_step(s, d), l_step(t, d))]) {
                next[pair(s, t)] = 1;
                break;
              }
      }
      layers.push_back(std::move(next));
    }
    return layers[len];
  }

  bool mismatch(State s, State t, std::size_t len) const { return layer(len)[pair(s, t)] != 0; }

  /// Lexicographically least word of length len on which s and t disagree.
  Word witness(State s, State t, std::size_t len) const {
    Word w;
    for (std::size_t rest = len; rest > 0; --rest) {
      for (Symbol d = 0; d < static_cast<Symbol>(k); ++d) {
        const State s2 = x_step(s, d), t2 = l_step(t, d);
        if (mismatch(s2, t2, rest - 1)) {
          w.push_back(d);
          s = s2;
          t = t2;
          break;
        }
      }
    }
    return w;
  }

  mutable std::mutex mu;
  mutable std::deque<std::vector<std::uint8_t>> layers;
};

const CycleContext::Tables& tables(const CycleContext& ctx) { return *ctx.tables_; }

namespace {

BaseKSet cycle_set(const Automaton& a, State p) {
  const State one[] = {p};
  return BaseKSet(with_initial_final(a, one, one));
}

}  // namespace

CycleContext::CycleContext(Automaton automaton, State p, std::optional<Symbol> a)
    : automaton_(std::move(automaton)), p_(p), set_(cycle_set(automaton_, p)) {
  const Automaton& A = automaton_;
  const int k = A.radix();
  if (A.tracks() != 1) throw InvalidArgument("cycle contexts need a one-track automaton");
  if (p >= A.num_states()) throw InvalidArgument("state " + std::to_string(p) + " out of range");

  auto t = std::make_shared<Tables>();
  t->k = k;
  t->p = p;
  t->nq = A.num_states();
  t->l_delta.assign(t->nq * k, kNoState);
  const State from[] = {p};
  const auto reach = reachable_from(A, from);
  for (State q = 0; q < A.num_states(); ++q) {
    if (!reach[q]) continue;
    for (Symbol d = 0; d < static_cast<Symbol>(k); ++d) {
      auto succ = A.successors(q, d);
      if (succ.size() > 1)
        throw InvalidArgument("transitions from state " + std::to_string(q) + " on digit " +
                              std::to_string(d) + " are not deterministic");
      if (!succ.empty()) t->l_delta[static_cast<std::size_t>(q) * k + d] = succ.front();
    }
  }
  const Automaton& ex = set_.padded_dfa();
  t->nx = ex.num_states();
  t->x_init = ex.initial().front();
  t->x_delta.assign(t->nx * k, kNoState);
  t->x_final.assign(t->nx, 0);
  for (State q = 0; q < ex.num_states(); ++q) {
    t->x_final[q] = ex.is_final(q);
    for (Symbol d = 0; d < static_cast<Symbol>(k); ++d)
      t->x_delta[static_cast<std::size_t>(q) * k + d] = ex.next(q, d);
  }
  tables_ = std::move(t);

  if (a) {
    if (*a >= static_cast<Symbol>(k)) throw InvalidArgument("digit out of range");
    if (delta(p, *a) != p)
      throw DomainError("digit " + std::to_string(*a) + " does not loop at state " + std::to_string(p));
    a_ = *a;
  } else {
    std::optional<Symbol> pick;
    for (Symbol d = 1; d < static_cast<Symbol>(k) && !pick; ++d)
      if (delta(p, d) == p) pick = d;
    if (!pick && delta(p, 0) == p) pick = 0;
    if (!pick) throw DomainError("no digit loops at state " + std::to_string(p));
    a_ = *pick;
  }
  const Symbol zero[] = {0};
  const Symbol top[] = {static_cast<Symbol>(k - 1)};
  if (!is_idempotent_word(A, zero)) throw DomainError("digit 0 is not idempotent");
  if (!is_idempotent_word(A, top)) throw DomainError("digit k-1 is not idempotent");

  const State z = delta(p, 0);
  if (z == p) {
    case_ = CycleCase::I;
  } else if (z == kNoState) {
    case_ = CycleCase::II;
  } else {
    const auto scc = scc_decompose(A);
    case_ = scc.component_of[z] == scc.component_of[p] ? CycleCase::III : CycleCase::II;
  }
  m_ = (A.num_states() + 1) * (A.num_states() + 1);
}

CycleContext CycleContext::normalized(const BaseKSet& x, State p, int cap) {
  Normalization nz = find_normalization(x, p, cap);
  return CycleContext(nz.set.automaton(), p, nz.a);
}

State CycleContext::delta(State q, Symbol d) const {
  if (q >= tables_->nq || d >= static_cast<Symbol>(tables_->k)) return kNoState;
  return tables_->l_delta[static_cast<std::size_t>(q) * tables_->k + d];
}

bool CycleContext::in_cycle_language(std::span<const Symbol> w) const {
  return tables_->l_run(p_, w) == p_;
}

CycleContext random_cycle_context(std::mt19937_64& rng, int k, std::size_t max_states) {
  if (max_states == 0) throw InvalidArgument("max_states must be positive");
  std::uniform_int_distribution<std::size_t> size(1, max_states);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    RandomAutomatonOptions opts;
    opts.radix = k;
    opts.states = size(rng);
    opts.density = 0.85;
    const Automaton a = random_automaton(rng, opts);
    const State p = std::uniform_int_distribution<State>(0, static_cast<State>(opts.states - 1))(rng);
    try {
      CycleContext ctx(a, p);
      if (ctx.cycle_case() != CycleCase::III) return ctx;
    } catch (const DomainError&) {
    }
  }
  throw LimitExceeded("no cycle context found");
}

// --- long and short conditions ----------------------------------------------------

namespace {

/// [a^m]_k.
BigInt repdigit(int k, Symbol a, std::size_t m) {
  BigInt v = 0;
  for (std::size_t i = 0; i < m; ++i) v = v * k + a;
  return v;
}

/// X-side states after canonical(n) a^m for m = 0..r.
std::vector<State> a_chain(const CycleContext::Tables& t, const BigInt& n, Symbol a, std::size_t r) {
  std::vector<State> out;
  State s = t.x_run(t.x_init, canonical_expansion(n, t.k));
  out.push_back(s);
  for (std::size_t m = 0; m < r; ++m) {
    s = t.x_step(s, a);
    out.push_back(s);
  }
  return out;
}

/// Pairs (S, T) over prefixes v0 of length d, where S is the X-side state of
/// n - [a^d] + [v0] (dead if negative) and T is δ(p, v0). The sum is read
/// most significant digit first with a guessed carry from below.
class PrefixProduct {
 public:
  struct Node {
    State s;
    State t;
    std::uint8_t carry;  // carry the remaining low digits must produce
    auto operator<=>(const Node&) const = default;
  };

  PrefixProduct(const CycleContext::Tables& t, const BigInt& n, Symbol a, std::size_t d) : t_(t) {
    const BigInt kd = power(t.k, d);
    const BigInt base = n - repdigit(t.k, a, d);
    BigInt hi = base / kd;
    if (base < 0 && hi * kd != base) hi -= 1;
    digits_ = padded_expansion(base - hi * kd, t.k, d);
    const State dead = static_cast<State>(t.nx);
    for (std::uint8_t c = 0; c < 2; ++c) {
      const BigInt top = hi + c;
      const State s = top < 0 ? dead : t.x_run(t.x_init, canonical_expansion(top, t.k));
      starts_.push_back({s, t.p, c});
    }
    layers_.assign(1, std::set<Node>(starts_.begin(), starts_.end()));
    for (std::size_t i = 0; i < d; ++i) {
      std::set<Node> next;
      for (const Node& node : layers_.back())
        for (Symbol x = 0; x < static_cast<Symbol>(t.k); ++x) step(node, i, x, next);
      layers_.push_back(std::move(next));
    }
  }

  std::set<std::pair<State, State>> pairs() const {
    std::set<std::pair<State, State>> out;
    for (const Node& node : layers_.back())
      if (node.carry == 0) out.emplace(node.s, node.t);
    return out;
  }

  /// Lexicographically least v0 whose pair satisfies pred.
  template <class Pred>
  std::optional<std::tuple<Word, State, State>> least(Pred&& pred) const {
    const std::size_t d = digits_.size();
    std::vector<std::set<Node>> good(d + 1);
    for (const Node& node : layers_[d])
      if (node.carry == 0 && pred(node.s, node.t)) good[d].insert(node);
    for (std::size_t i = d; i-- > 0;)
      for (const Node& node : layers_[i]) {
        std::set<Node> succ;
        for (Symbol x = 0; x < static_cast<Symbol>(t_.k); ++x) step(node, i, x, succ);
        if (std::any_of(succ.begin(), succ.end(), [&](const Node& m) { return good[i + 1].count(m); }))
          good[i].insert(node);
      }
    std::set<Node> cur;
    for (const Node& node : starts_)
      if (good[0].count(node)) cur.insert(node);
    if (cur.empty()) return std::nullopt;
    Word v0;
    for (std::size_t i = 0; i < d; ++i) {
      for (Symbol x = 0; x < static_cast<Symbol>(t_.k); ++x) {
        std::set<Node> succ, kept;
        for (const Node& node : cur) step(node, i, x, succ);
        for (const Node& m : succ)
          if (good[i + 1].count(m)) kept.insert(m);
        if (kept.empty()) continue;
        v0.push_back(x);
        cur = std::move(kept);
        break;
      }
    }
    const Node& end = *cur.begin();
    return std::make_tuple(std::move(v0), end.s, end.t);
  }

 private:
  void step(const Node& node, std::size_t i, Symbol x, std::set<Node>& out) const {
    const State tl = t_.l_step(node.t, x);
    for (std::uint8_t c_in = 0; c_in < 2; ++c_in) {
      const unsigned sum = digits_[i] + x + c_in;
      if ((sum >= static_cast<unsigned>(t_.k)) != (node.carry == 1)) continue;
      const Symbol digit = static_cast<Symbol>(sum % t_.k);
      out.insert({t_.x_step(node.s, digit), tl, c_in});
    }
  }

  const CycleContext::Tables& t_;
  Word digits_;
  std::vector<Node> starts_;
  std::vector<std::set<Node>> layers_;
};

std::optional<Violation> check_layered(const CycleContext& ctx, const BigInt& n, std::size_t i, std::size_t r) {
  const auto& t = tables(ctx);
  const int k = ctx.radix();
  const Symbol a = ctx.a();
  const auto chain = a_chain(t, n, a, r);
  const BigInt kr = power(k, r);
  for (std::size_t j = 0; j <= r; ++j) {
    const State s = chain[r - j];
    if (!t.mismatch(s, ctx.p(), j)) continue;
    Violation v;
    v.r = r;
    v.side = Side::Short;
    v.v = t.witness(s, ctx.p(), j);
    v.value = kr * n + repdigit(k, a, r - j) * power(k, j) + eval_msd(v.v, k);
    v.v_in_l = ctx.in_cycle_language(v.v);
    return v;
  }
  for (std::size_t d = 1; d <= i; ++d) {
    const auto hit = PrefixProduct(t, n, a, d).least([&](State s, State tl) { return t.mismatch(s, tl, r); });
    if (!hit) continue;
    const auto& [v0, s, tl] = *hit;
    Violation v;
    v.r = r;
    v.side = Side::Long;
    v.v = v0;
    const Word tail = t.witness(s, tl, r);
    v.v.insert(v.v.end(), tail.begin(), tail.end());
    v.value = kr * (n - repdigit(k, a, d)) + eval_msd(v.v, k);
    v.v_in_l = ctx.in_cycle_language(v.v);
    return v;
  }
  return std::nullopt;
}

std::optional<Violation> check_enumerate(const CycleContext& ctx, const BigInt& n, std::size_t i,
                                         std::size_t r) {
  const int k = ctx.radix();
  const Symbol a = ctx.a();
  const BigInt kr = power(k, r);
  for (std::size_t j = 0; j <= r + i; ++j) {
    Word v(j, 0);
    while (true) {
      const BigInt value = j > r ? kr * n - repdigit(k, a, j - r) * kr + eval_msd(v, k)
                                 : kr * n + repdigit(k, a, r - j) * power(k, j) + eval_msd(v, k);
      const bool in_x = value >= 0 && ctx.set().contains(value);
      const bool in_l = ctx.in_cycle_language(v);
      if (in_x != in_l) return Violation{r, v, j > r ? Side::Long : Side::Short, value, in_l};
      std::size_t pos = j;
      while (pos > 0 && v[pos - 1] == static_cast<Symbol>(k - 1)) v[--pos] = 0;
      if (pos == 0) break;
      ++v[pos - 1];
    }
  }
  return std::nullopt;
}

void require_member(const CycleContext& ctx, const BigInt& n) {
  if (n < 0 || !ctx.set().contains(n)) throw DomainError(n.str() + " is not in X");
  if (ctx.cycle_case() == CycleCase::III) throw DomainError("F is not computed in case III");
}

}  // namespace

std::optional<Violation> condition_check(const CycleContext& ctx, const BigInt& n, std::size_t i, std::size_t r,
                                         CheckMode mode) {
  if (n < 0) throw InvalidArgument("n must be natural");
  return mode == CheckMode::Layered ? check_layered(ctx, n, i, r) : check_enumerate(ctx, n, i, r);
}

FResult f_r(const CycleContext& ctx, const BigInt& n, std::size_t R) {
  require_member(ctx, n);
  const int k = ctx.radix();
  FResult out;
  out.trace.n = n;
  if (n == 0) {
    out.value = 1;
    out.trace.values.assign(R + 1, BigInt(1));
    return out;
  }
  const auto& t = tables(ctx);
  const Symbol a = ctx.a();
  const std::size_t cap = num_digits(n, k);

  // g[r]: largest candidate passing at shift r alone, -1 if the short condition fails.
  std::vector<long> g(R + 1, static_cast<long>(cap));
  std::vector<bool> open(R + 1, true);
  const auto chain = a_chain(t, n, a, R);
  for (std::size_t r = 0; r <= R; ++r)
    for (std::size_t j = 0; j <= r; ++j)
      if (t.mismatch(chain[r - j], ctx.p(), j)) {
        g[r] = -1;
        open[r] = false;
        break;
      }
  for (std::size_t d = 1; d <= cap; ++d) {
    if (std::none_of(open.begin(), open.end(), [](bool b) { return b; })) break;
    const auto pairs = PrefixProduct(t, n, a, d).pairs();
    for (std::size_t r = 0; r <= R; ++r) {
      if (!open[r]) continue;
      for (const auto& [s, tl] : pairs)
        if (t.mismatch(s, tl, r)) {
          g[r] = static_cast<long>(d) - 1;
          open[r] = false;
          break;
        }
    }
  }

  long running = static_cast<long>(cap);
  for (std::size_t r = 0; r <= R; ++r) {
    running = std::min(running, g[r]);
    if (running < 0) out.trace.short_fails_at_zero = true;
    out.trace.values.push_back(power(k, static_cast<std::size_t>(std::max(running, 0L))));
  }
  const std::size_t e = static_cast<std::size_t>(std::max(running, 0L));
  out.trace.exponent = e;
  out.value = power(k, e);
  if (e + 1 <= cap) {
    for (std::size_t r = 0; r <= R; ++r) {
      if (g[r] >= static_cast<long>(e + 1)) continue;
      auto v = check_layered(ctx, n, e + 1, r);
      if (v) out.trace.rejected.push_back({e + 1, std::move(*v)});
      break;
    }
  }
  return out;
}

BigInt f_stable(const CycleContext& ctx, const BigInt& n) { return f_r(ctx, n, ctx.M()).value; }

std::size_t beta(const CycleContext& ctx) {
  const Automaton& A = ctx.automaton();
  std::vector<std::vector<State>> vec(A.num_states());
  for (State q = 0; q < A.num_states(); ++q) vec[q] = {q};
  std::map<std::vector<std::vector<State>>, std::size_t> seen;
  for (std::size_t r = 0;; ++r) {
    if (!seen.emplace(vec, r).second) return r;
    for (auto& s : vec) s = step(A, s, ctx.a());
  }
}

std::size_t alpha(const CycleContext& ctx) { return ctx.automaton().num_states() + 2; }

bool multk_check(const CycleContext& ctx, std::span<const Symbol> w, std::size_t i) {
  if (!ctx.in_cycle_language(w)) throw DomainError("word is not in the cycle language");
  const int k = ctx.radix();
  const BigInt base = eval_msd(w, k);
  if (base == 0) throw DomainError("[w]_k must be positive");
  const BigInt extended = base * power(k, i) + repdigit(k, ctx.a(), i);
  return f_stable(ctx, extended) >= power(k, i) * f_stable(ctx, base);
}

namespace {

BigInt tilde_shift(const CycleContext& ctx, const BigInt& n) {
  if (n <= 0) throw DomainError("X~ is defined for n >= 1");
  return n + repdigit(ctx.radix(), ctx.a(), num_digits(n, ctx.radix()) - 1);
}

}  // namespace

bool tilde_member(const CycleContext& ctx, const BigInt& n) { return ctx.set().contains(tilde_shift(ctx, n)); }

BigInt tilde_f(const CycleContext& ctx, const BigInt& n) {
  const BigInt m = tilde_shift(ctx, n);
  if (!ctx.set().contains(m)) throw DomainError(n.str() + " is not in X~");
  return f_stable(ctx, m);
}

bool ka_equivalent(const BigInt& n1, const BigInt& n2, int k, Symbol a) {
  if (k < 2) throw InvalidArgument("radix must be at least 2");
  if (a >= static_cast<Symbol>(k)) throw InvalidArgument("digit out of range");
  const BigInt& lo = n1 < n2 ? n1 : n2;
  const BigInt& hi = n1 < n2 ? n2 : n1;
  BigInt cur = lo;
  while (cur <= hi) {
    if (cur == hi) return true;
    BigInt next = cur * k + a;
    if (next == cur) break;
    cur = std::move(next);
  }
  return false;
}

}  // namespace autodich
