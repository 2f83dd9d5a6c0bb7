// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/errors.hpp"
#include "autodich/ffunc.hpp"

#include <algorithm>
#include <climits>

namespace autodich {

namespace {

constexpr int kNone = INT_MIN;
constexpr int kEmptySum = INT_MAX;

int exponent_of_vk(std::uint64_t n, int k) {
  int e = 0;
  while (n % k == 0) {
    n /= k;
    ++e;
  }
  return e;
}

/// Growth probe: counts per digit length over the last complete lengths
/// grow by at least sqrt(k) per digit on average.
bool looks_non_sparse(const std::vector<std::uint64_t>& members, int k, std::uint64_t upto) {
  std::vector<std::uint64_t> per_length;
  for (std::uint64_t lo = 1; lo * k - 1 <= upto; lo *= k) {
    const std::uint64_t hi = lo * k;
    per_length.push_back(static_cast<std::uint64_t>(
        std::count_if(members.begin(), members.end(), [&](std::uint64_t x) { return x >= lo && x < hi; })));
  }
  if (per_length.size() < 3) return !members.empty();
  const double c2 = static_cast<double>(per_length[per_length.size() - 3]);
  const double c0 = static_cast<double>(per_length.back());
  if (c0 < 4 || c2 == 0) return false;
  return c0 / c2 >= static_cast<double>(k);
}

}  // namespace

GConstruction construct_g(const CycleContext& ctx, const GOptions& opts) {
  const int k = ctx.radix();
  const std::uint64_t N = opts.upto;
  if (N < 1 || N > 1'000'000) throw InvalidArgument("upto must be in [1, 10^6]");
  if (opts.max_order < 1) throw InvalidArgument("max_order must be positive");
  if (ctx.cycle_case() == CycleCase::III) throw DomainError("G is not constructed in case III");
  if (is_sparse(ctx.set().padded_dfa())) throw DomainError("X is sparse");
  if (logic::is_eventually_periodic(ctx.set()).periodic) throw DomainError("X is eventually periodic");

  // X~ ∩ [1, N] with the ratio exponent log_k(F~(n) / V_k(n)).
  std::vector<int> ratio(N + 1, kNone), ftilde(N + 1, kNone);
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (!tilde_member(ctx, n)) continue;
    ftilde[n] = static_cast<int>(log_k_exact(tilde_f(ctx, n), k));
    ratio[n] = ftilde[n] - exponent_of_vk(n, k);
  }
  GConstruction out;
  for (std::uint64_t n = 1; n <= N; ++n)
    if (ratio[n] != kNone) out.ratio_exponents.push_back(ratio[n]);
  std::sort(out.ratio_exponents.begin(), out.ratio_exponents.end());
  out.ratio_exponents.erase(std::unique(out.ratio_exponents.begin(), out.ratio_exponents.end()),
                            out.ratio_exponents.end());
  const auto& ps = out.ratio_exponents;
  if (ps.empty()) throw DomainError("X~ has no members in range");

  auto stratum_of = [&](std::uint64_t n) {
    return static_cast<std::size_t>(std::lower_bound(ps.begin(), ps.end(), ratio[n]) - ps.begin());
  };
  std::vector<std::vector<std::uint64_t>> strata(ps.size());
  for (std::uint64_t n = 1; n <= N; ++n)
    if (ratio[n] != kNone) strata[stratum_of(n)].push_back(n);
  for (const auto& s : strata) out.stratum_sizes.push_back(s.size());

  if (opts.stratum) {
    if (*opts.stratum >= ps.size()) throw InvalidArgument("stratum index out of range");
    out.stratum = *opts.stratum;
  } else {
    out.stratum = 0;
    for (std::size_t j = ps.size(); j-- > 0;)
      if (looks_non_sparse(strata[j], k, N)) {
        out.stratum = j;
        break;
      }
  }
  const std::size_t j = out.stratum;
  const int pj = ps[j];

  // X0 = X~ minus every n with some k^m n in a stratum above j.
  std::vector<int> h(N + 1, kNone);
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (ratio[n] == kNone) continue;
    bool excluded = false;
    for (std::uint64_t m = n; m <= N; m *= k) {
      if (ratio[m] != kNone && stratum_of(m) > j) {
        excluded = true;
        break;
      }
      if (m > N / k) break;
    }
    if (!excluded) h[n] = ftilde[n] - pj;
  }
  for (std::uint64_t q = 1, e = 0; q <= N; q *= k, ++e) {
    h[q] = static_cast<int>(e);
    if (q > N / k) break;
  }

  std::vector<std::pair<std::uint64_t, int>> y, y0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (h[n] == kNone) continue;
    y.emplace_back(n, h[n]);
    if (h[n] == exponent_of_vk(n, k)) y0.emplace_back(n, h[n]);
  }
  out.y_size = y.size();
  out.y0_size = y0.size();

  // Additive order of Y0 over [1, N].
  std::vector<int> count(N + 1, kEmptySum);
  count[0] = 0;
  for (std::uint64_t n = 1; n <= N; ++n)
    for (const auto& [e, unused] : y0) {
      if (e > n) break;
      if (count[n - e] != kEmptySum) count[n] = std::min(count[n], count[n - e] + 1);
    }
  const int order = *std::max_element(count.begin() + 1, count.end());
  if (order <= opts.max_order) out.basis_order = order;
  out.order_used = opts.order ? *opts.order : out.basis_order.value_or(opts.max_order);
  if (out.order_used < 1) throw InvalidArgument("order must be positive");

  // best[n]: max over sums of at most r elements of Y of the min of H.
  std::vector<int> best(N + 1, kNone);
  best[0] = kEmptySum;
  for (int r = 1; r <= out.order_used; ++r) {
    std::vector<int> next = best;
    for (std::uint64_t n = 1; n <= N; ++n)
      for (const auto& [e, he] : y) {
        if (e > n) break;
        if (best[n - e] == kNone) continue;
        next[n] = std::max(next[n], std::min(he, best[n - e]));
      }
    best = std::move(next);
  }

  out.rows.resize(N + 1);
  out.exact = true;
  out.upper_bound = true;
  out.rows[0] = GRow{0, 0, 0};
  for (std::uint64_t n = 1; n <= N; ++n) {
    GRow& row = out.rows[n];
    row.n = n;
    row.vk = exponent_of_vk(n, k);
    if (best[n] != kNone) row.g = best[n];
    if (!row.g || *row.g != row.vk) out.exact = false;
    if (row.g && *row.g > row.vk) out.upper_bound = false;
  }
  return out;
}

}  // namespace autodich
