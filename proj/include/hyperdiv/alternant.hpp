/*
   Copyright 2026 The hyperdiv Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/**
 * @file alternant.hpp
 * @brief Newton solver for the alternant system H(X) X' = G, H_ij = x_j^{i-1}/y_j,
 * working on U(t, z) = prod (z - x_j(t)) instead of the roots.
 *
 * y_j^2 = f2(x_j) and y_j(0) = V0(x_j(0)). Every level refreshes the inverse
 * square root W of f2 modulo U_m, reads H(X_m) X_m' off a Hankel product of
 * the logarithmic derivatives of the Newton sums, and interpolates the
 * correction back into U.
 */

#pragma once

#include <bit>
#include <optional>
#include <vector>

#include "diffsolve.hpp"
#include "structured.hpp"

namespace hyperdiv {

struct AlternantInput {
  std::size_t g = 0;
  std::size_t n = 0;
  int N = 1;
  std::vector<Series> G;  // length g, at least n terms
  Poly f2;                // degree 2g+1
  Poly U0;                // monic, degree g
  Poly V0;                // degree < g, U0 | f2 - V0^2
};

struct AlternantOutput {
  PolyZ U;  // monic of degree g, modulo t^{n+1}
  PolyZ W;  // f2 W^2 = 1 modulo (t^{n+1}, U)
};

/// Newton refreshes of W per level. The inherited W is exact against U_{m/2}, not U_m, and
/// U_m also differs from U_{m/2} by p-adic noise at low t-order left by the integration. The
/// step squares the error 1 - f2 W^2, so it is repeated until W is a fixed point; the cap is
/// where an error in the ideal (p, t) must have vanished modulo (p^M, t^{n+1}).
inline int inv_sqrt_step_cap(int M, std::size_t n) { return 2 + std::bit_width(static_cast<u64>(M) + n); }

inline int alternant_required_precision(u64 p, int N, u64 n, u64 g) {
  if (p == 2) throw ContractViolation("alternant system needs odd p");
  if (g == 0) throw ContractViolation("alternant system needs g >= 1");
  return required_precision(p, N, n) + floor_log(p, 2 * g - 1);
}

/// T_m = -Q_m V_m mod (t^{n+1}, U_m), where Q_m is the z^{g+1}..z^{2g} band of U_m D_m and
/// D_m = F_1 z^g + ... + F_g z.
inline PolyZ interpolation_update(const PolyZ& Um, const PolyZ& Vm, const std::vector<Series>& F, std::size_t n) {
  if (Um.is_zero() || !Um.is_monic()) throw ContractViolation("interpolation_update needs a monic U");
  const std::size_t g = static_cast<std::size_t>(Um.zdeg());
  if (F.size() != g) throw ContractViolation("interpolation_update needs g components");
  const std::size_t L = n + 1;
  const CtxPtr& ctx = Um.ctx();
  std::vector<Series> dc(g + 1, Series(ctx, L));
  for (std::size_t i = 0; i < g; ++i) dc[g - i] = F[i];
  PolyZ D(ctx, L, dc);
  PolyZ prod = mul(Um, D, L);
  std::vector<Series> qc;
  for (std::size_t k = g + 1; k <= 2 * g; ++k) qc.push_back(prod.coeff(k));
  PolyZ Q(ctx, L, qc);
  return -ModU(Um, L).mul(Q, Vm);
}

namespace detail {

/// 1/V0 mod U0: Euclid over the residue field, then Newton W <- W (2 - V0 W) mod U0.
inline Poly inverse_mod_monic(const Poly& V0, const Poly& U0) {
  const CtxPtr& ctx = U0.ctx();
  const CtxPtr res = ctx->residue();
  auto to_res = [&](const Poly& P) {
    std::vector<RingElem> c;
    for (std::size_t i = 0; i < P.size(); ++i) c.push_back(reduce_residue(P.coeff(i)));
    return Poly(res, c);
  };
  XGcd e = xgcd(to_res(V0), to_res(U0));
  if (e.g.degree() != 0) throw ContractViolation("V0 is not invertible modulo (p, U0)");
  std::vector<RingElem> c;
  for (std::size_t i = 0; i < e.s.size(); ++i) c.push_back(change_precision(e.s.coeff(i), ctx));
  Poly W(ctx, c);
  const Poly two = Poly::from_ints(ctx, {2});
  for (int digits = 1; digits < ctx->precision(); digits *= 2) W = rem(W * (two - rem(V0 * W, U0)), U0);
  return W;
}

inline bool separable_mod_p(const Poly& P) {
  const CtxPtr res = P.ctx()->residue();
  std::vector<RingElem> c, dc;
  for (std::size_t i = 0; i < P.size(); ++i) c.push_back(reduce_residue(P.coeff(i)));
  Poly Pb(res, c);
  Poly dP(res);
  for (std::size_t i = 1; i < Pb.size(); ++i) dP.set_coeff(i - 1, Pb.coeff(i) * RingElem(res, static_cast<long long>(i)));
  return !dP.is_zero() && gcd(Pb, dP).degree() == 0;
}

/// w_steps fixes the number of W refreshes per level; by default they run to a fixed point.
inline AlternantOutput alternant_rec(const AlternantInput& in, const Poly& W0, std::size_t n,
                                     std::optional<int> w_steps = std::nullopt) {
  const std::size_t g = in.g;
  const CtxPtr& ctx = in.U0.ctx();
  if (n == 0) return {PolyZ::from_poly(in.U0, 1), PolyZ::from_poly(W0, 1)};
  const std::size_t m = n / 2;  // ceil((n-1)/2)
  AlternantOutput prev = alternant_rec(in, W0, m, w_steps);
  const std::size_t L = n + 1;
  PolyZ Um = prev.U.padded(L);
  ModU modU(Um, L);

  PolyZ W = prev.W.padded(L);
  if (w_steps) {
    for (int k = 0; k < *w_steps; ++k) W = qr_inv_sqrt_step(W, in.f2, modU);
  } else {
    for (int k = 0, cap = inv_sqrt_step_cap(ctx->precision(), n); k < cap; ++k) {
      PolyZ next = qr_inv_sqrt_step(W, in.f2, modU);
      if (next == W) break;
      W = std::move(next);
    }
  }
  PolyZ V = modU.rem(mul(PolyZ::from_poly(in.f2, L), W, L));

  std::vector<Series> s = newton_sums(Um, 2 * g - 1, n);
  std::vector<Series> r;
  for (std::size_t i = 1; i <= 2 * g - 1; ++i) {
    Series d = derivative(s[i - 1]);
    Series q(ctx, d.trunc());
    for (std::size_t k = 0; k < d.trunc(); ++k) q.set(k, int_div(d.coeff(k), i));
    r.push_back(q);
  }
  std::vector<Series> w;
  for (std::size_t i = 0; i < g; ++i) w.push_back(W.coeff(i));
  std::vector<Series> Hp = hankel_prod(r, w, n);  // H(X_m) X_m' mod t^n

  std::vector<Series> F;
  for (std::size_t i = 0; i < g; ++i) F.push_back(integrate(in.G[i].truncated(n) - Hp[i].truncated(n)));
  PolyZ T = interpolation_update(Um, V, F, n);
  return {Um + T, W};
}

}  // namespace detail

/// Solves the alternant system modulo t^{n+1}; the ring precision must cover alternant_required_precision.
inline AlternantOutput alternant_solve(const AlternantInput& in) {
  const std::size_t g = in.g;
  if (g == 0 || in.G.size() != g) throw ContractViolation("alternant_solve: G must have g components");
  const CtxPtr& ctx = in.U0.ctx();
  if (in.U0.degree() != static_cast<int>(g) || !(in.U0.lead() == RingElem::one(ctx)))
    throw ContractViolation("alternant_solve: U0 must be monic of degree g");
  if (in.V0.degree() >= static_cast<int>(g)) throw ContractViolation("alternant_solve: deg V0 must be below g");
  if (in.f2.degree() < 1) throw ContractViolation("alternant_solve: f2 must be nonconstant");
  check_same(ctx, in.f2.ctx());
  check_same(ctx, in.V0.ctx());
  for (const auto& s : in.G) {
    check_same(ctx, s.ctx());
    if (s.trunc() < in.n) throw ContractViolation("alternant_solve: G known to too few terms");
  }
  if (ctx->precision() < alternant_required_precision(ctx->prime(), in.N, in.n, g))
    throw ContractViolation("alternant_solve: ring precision below alternant_required_precision");
  if (!rem(in.f2 - in.V0 * in.V0, in.U0).is_zero()) throw ContractViolation("alternant_solve: U0 must divide f2 - V0^2");
  if (!detail::separable_mod_p(in.U0)) throw ContractViolation("alternant_solve: U0 must be separable mod p");
  const Poly W0 = detail::inverse_mod_monic(in.V0, in.U0);
  AlternantOutput out = detail::alternant_rec(in, W0, in.n);
  // the last W is exact against U_m only; one more step brings it to t^{n+1} against U
  out.W = qr_inv_sqrt_step(out.W, in.f2, out.U, in.n);
  return out;
}

}  // namespace hyperdiv
