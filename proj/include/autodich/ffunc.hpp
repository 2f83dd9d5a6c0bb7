// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "autodich/automaton.hpp"
#include "autodich/basek.hpp"
#include "autodich/logic.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace autodich {

enum class CycleCase { I, II, III };

std::string to_string(CycleCase c);

/// k^i where i is the number of trailing copies of digit a in the canonical
/// expansion of n. Throws DomainError for n = 0.
BigInt v_ka(const BigInt& n, int k, Symbol a);

/// Largest power of k dividing n (v_ka with a = 0).
inline BigInt v_k(const BigInt& n, int k) { return v_ka(n, k, 0); }

/// Exponent of a power of k. Throws InvalidArgument if x is not one.
std::size_t log_k_exact(const BigInt& x, int k);

/// A state p of a one-track automaton together with the set X = [L]_k of
/// its cycle language L = {w : δ(p, w) = {p}}.
///
/// The transitions read from p must be deterministic, digits 0 and k-1 must
/// be idempotent and the distinguished digit a must loop at p.
class CycleContext {
 public:
  /// `a` defaults to the least nonzero digit looping at p, or 0 if only 0
  /// does. Throws DomainError if no digit loops at p or 0 / k-1 is not
  /// idempotent, InvalidArgument on a bad state or digit.
  CycleContext(Automaton automaton, State p, std::optional<Symbol> a = std::nullopt);

  /// Context over the radix given by find_normalization(x, p).
  static CycleContext normalized(const BaseKSet& x, State p, int cap = 12);

  const Automaton& automaton() const noexcept { return automaton_; }
  State p() const noexcept { return p_; }
  Symbol a() const noexcept { return a_; }
  int radix() const noexcept { return automaton_.radix(); }
  CycleCase cycle_case() const noexcept { return case_; }
  /// X = [L]_k.
  const BaseKSet& set() const noexcept { return set_; }
  /// (|Q| + 1)^2.
  std::size_t M() const noexcept { return m_; }

  bool in_cycle_language(std::span<const Symbol> w) const;
  /// δ(q, d) for q reachable from p; kNoState if undefined.
  State delta(State q, Symbol d) const;

  struct Tables;

 private:
  friend const Tables& tables(const CycleContext&);

  Automaton automaton_;
  State p_;
  Symbol a_ = 0;
  CycleCase case_ = CycleCase::I;
  BaseKSet set_;
  std::size_t m_ = 0;
  std::shared_ptr<Tables> tables_;
};

/// A context in case I or II on a random deterministic automaton with 1 to
/// max_states states over radix k (rejection sampling).
CycleContext random_cycle_context(std::mt19937_64& rng, int k, std::size_t max_states);

/// Which condition a word v breaks at shift r: Long when |v| > r (v reaches
/// into the digits of n above the a-block), Short when |v| <= r.
enum class Side { Long, Short };

std::string to_string(Side s);

/// A word v breaking the membership condition at shift r.
struct Violation {
  std::size_t r = 0;
  Word v;
  Side side = Side::Short;
  /// The left-hand value tested for membership in X (may be negative).
  BigInt value;
  /// True iff v is in L (then value is not in X, and vice versa).
  bool v_in_l = false;
};

enum class CheckMode { Layered, Enumerate };

/// Checks the long and short conditions for all v with |v| <= r + i at shift r. On
/// failure returns the shortest, then lexicographically least, violating v.
/// Enumerate mode tries every v explicitly (exponential; oracle use only).
std::optional<Violation> condition_check(const CycleContext& ctx, const BigInt& n, std::size_t i,
                                         std::size_t r, CheckMode mode = CheckMode::Layered);

struct Rejection {
  std::size_t candidate = 0;  // exponent i of the rejected k^i
  Violation violation;
};

struct FTrace {
  BigInt n;
  std::size_t exponent = 0;  // F_R(n) = k^exponent
  /// The least rejected candidate (exponent + 1) with its least (r, |v|, v)
  /// violation; empty when exponent + 1 exceeds the digit bound.
  std::vector<Rejection> rejected;
  /// values[R'] = F_R'(n) for R' = 0..R.
  std::vector<BigInt> values;
  /// Set when the short condition fails at candidate 0.
  bool short_fails_at_zero = false;
};

struct FResult {
  BigInt value;
  FTrace trace;
};

/// F_R(n) for n in X. Throws DomainError if n is not in X or the context is
/// in case III.
FResult f_r(const CycleContext& ctx, const BigInt& n, std::size_t R);

/// F(n) = F_M(n).
BigInt f_stable(const CycleContext& ctx, const BigInt& n);

/// Least r2 such that the vector (δ(q, a^r2))_q repeats an earlier one.
std::size_t beta(const CycleContext& ctx);

/// |Q| + 2.
std::size_t alpha(const CycleContext& ctx);

/// F([w a^i]_k) >= k^i F([w]_k). Throws DomainError if w is not in L or
/// [w]_k = 0.
bool multk_check(const CycleContext& ctx, std::span<const Symbol> w, std::size_t i);

/// n + [a^t]_k ∈ X where k^t <= n < k^(t+1). Throws DomainError for n = 0.
bool tilde_member(const CycleContext& ctx, const BigInt& n);

/// F(n + [a^t]_k). Throws DomainError unless tilde_member(ctx, n).
BigInt tilde_f(const CycleContext& ctx, const BigInt& n);

/// n1 = k^i n2 + [a^i]_k or n2 = k^i n1 + [a^i]_k for some i >= 0.
bool ka_equivalent(const BigInt& n1, const BigInt& n2, int k, Symbol a);

// --- G construction ------------------------------------------------------------

struct GOptions {
  std::uint64_t upto = 2000;
  /// Fixed order; otherwise the least P <= max_order making Y0 an additive
  /// basis of [1, upto].
  std::optional<int> order;
  int max_order = 8;
  /// Index into the ratio exponents; otherwise chosen by the growth probe.
  std::optional<std::size_t> stratum;
};

struct GRow {
  std::uint64_t n = 0;
  /// G(n) = k^g; nullopt if n is not a sum of at most P elements of Y.
  std::optional<int> g;
  int vk = 0;  // V_k(n) = k^vk
};

struct GConstruction {
  /// Distinct exponents p with F~(n) / V_k(n) = k^p on X~ ∩ [1, upto].
  std::vector<int> ratio_exponents;
  std::vector<std::uint64_t> stratum_sizes;
  std::size_t stratum = 0;
  std::optional<int> basis_order;
  int order_used = 0;
  std::uint64_t y_size = 0;
  std::uint64_t y0_size = 0;
  std::vector<GRow> rows;  // n = 0..upto
  bool exact = false;        // G = V_k on [1, upto]
  bool upper_bound = false;  // G <= V_k wherever defined on [1, upto]
};

/// Builds Y = X0 ∪ k^ℕ and H from X~ and F~, then G by dynamic programming
/// over sums of at most P elements of Y. Throws DomainError if X is sparse
/// or eventually periodic.
GConstruction construct_g(const CycleContext& ctx, const GOptions& opts = {});

// --- definability ladder ----------------------------------------------------------

/// First-order formulas over (ℕ, +, X, k^ℕ) defining F_R. `set` names the
/// set X in the environment; terms may be variables or constants. Bound
/// variables get fresh names.
namespace ladder {

/// y = ℓ(x), the least power of k above x.
logic::Formula ell(logic::Term x, logic::Term y);
/// ℓ(x) <= y.
logic::Formula ell_le(logic::Term x, logic::Term y);
/// Some v with [v]_k = x and k^|v| = y lies in L.
logic::Formula in_l(const CycleContext& ctx, logic::Term x, logic::Term y, const std::string& set);
/// z = [a^(i-j) 0^j]_k for x = k^i, y = k^j.
logic::Formula a_block(const CycleContext& ctx, logic::Term x, logic::Term y, logic::Term z);
logic::Formula e_long(const CycleContext& ctx, std::size_t r, logic::Term x, logic::Term y, logic::Term n,
                      const std::string& set);
logic::Formula e_short(const CycleContext& ctx, std::size_t r, logic::Term x, logic::Term y, logic::Term n,
                       const std::string& set);
logic::Formula e(const CycleContext& ctx, std::size_t r, logic::Term x, logic::Term y, logic::Term n,
                 const std::string& set);
logic::Formula a_r(const CycleContext& ctx, std::size_t r, logic::Term n, logic::Term z, const std::string& set);
logic::Formula a_upto(const CycleContext& ctx, std::size_t R, logic::Term n, logic::Term z,
                      const std::string& set);
/// z = F_R(n) for n >= 1.
logic::Formula f_graph(const CycleContext& ctx, std::size_t R, logic::Term n, logic::Term z,
                       const std::string& set);

}  // namespace ladder

}  // namespace autodich
