// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/ffunc.hpp"

namespace autodich::ladder {

using namespace logic;

Formula ell(Term x, Term y) {
  const std::string p = fresh_name("p");
  return land({pow_k(y), forall(p, implies(pow_k(var(p)), iff(gt(var(p), x), ge(var(p), y))))});
}

Formula ell_le(Term x, Term y) {
  const std::string w = fresh_name("w");
  return exists(w, land({ell(x, var(w)), le(var(w), y)}));
}

Formula in_l(const CycleContext& ctx, Term x, Term y, const std::string& set) {
  // Case I: 0v ∈ L iff v ∈ L. Case II: no word of L starts with 0.
  if (ctx.cycle_case() == CycleCase::I) return land({ell_le(x, y), in_set(x, set)});
  const std::string w = fresh_name("w");
  return land({exists(w, land({ell(x, var(w)), eq(var(w), y)})), in_set(x, set)});
}

Formula a_block(const CycleContext& ctx, Term x, Term y, Term z) {
  // (k-1) z = [a]_k (x - y)
  const int k = ctx.radix();
  const BigInt a = ctx.a();
  return land({pow_k(x), pow_k(y), eq(add(scale(k - 1, z), scale(a, y)), scale(a, x))});
}

Formula e_long(const CycleContext& ctx, std::size_t r, Term x, Term y, Term n, const std::string& set) {
  const BigInt kr = power(ctx.radix(), r);
  const std::string s = fresh_name("s"), u = fresh_name("u");
  // k^r n + x - a(y, k^r) ∈ X, false when negative.
  Formula lhs = exists(s, land({a_block(ctx, y, lit(kr), var(s)),
                                exists(u, land({eq(add(var(u), var(s)), add(scale(kr, n), x)),
                                                in_set(var(u), set)}))}));
  return land({ell_le(x, y), iff(std::move(lhs), in_l(ctx, x, y, set))});
}

Formula e_short(const CycleContext& ctx, std::size_t r, Term x, Term y, Term n, const std::string& set) {
  const BigInt kr = power(ctx.radix(), r);
  const std::string s = fresh_name("s");
  Formula lhs =
      exists(s, land({a_block(ctx, lit(kr), y, var(s)), in_set(add({scale(kr, n), var(s), x}), set)}));
  return land({ell_le(x, y), iff(std::move(lhs), in_l(ctx, x, y, set))});
}

Formula e(const CycleContext& ctx, std::size_t r, Term x, Term y, Term n, const std::string& set) {
  const BigInt kr = power(ctx.radix(), r);
  return lor({land({gt(y, lit(kr)), e_long(ctx, r, x, y, n, set)}), land({le(y, lit(kr)), e_short(ctx, r, x, y, n, set)})});
}

Formula a_r(const CycleContext& ctx, std::size_t r, Term n, Term z, const std::string& set) {
  const BigInt kr = power(ctx.radix(), r);
  const std::string x = fresh_name("x"), y = fresh_name("y"), w = fresh_name("w");
  // For y ∈ k^ℕ, ℓ(x) <= y iff x < y.
  Formula body = forall(
      y, implies(land({pow_k(var(y)), le(var(y), scale(kr, z))}),
                 forall(x, implies(lt(var(x), var(y)), e(ctx, r, var(x), var(y), n, set)))));
  return land({pow_k(z), exists(w, land({ell(n, var(w)), le(z, var(w))})), std::move(body)});
}

Formula a_upto(const CycleContext& ctx, std::size_t R, Term n, Term z, const std::string& set) {
  std::vector<Formula> parts;
  for (std::size_t r = 0; r <= R; ++r) parts.push_back(a_r(ctx, r, n, z, set));
  return land(std::move(parts));
}

Formula f_graph(const CycleContext& ctx, std::size_t R, Term n, Term z, const std::string& set) {
  const int k = ctx.radix();
  const std::string z2 = fresh_name("z");
  return land({pow_k(z), le(z, scale(k, n)), a_upto(ctx, R, n, z, set),
               forall(z2, implies(land({pow_k(var(z2)), le(var(z2), scale(k, n)), a_upto(ctx, R, n, var(z2), set)}),
                                  le(var(z2), z)))});
}

}  // namespace autodich::ladder
