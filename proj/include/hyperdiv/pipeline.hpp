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
 * @file pipeline.hpp
 * @brief Cantor l-division polynomials of y^2 = f(x), deg f = 2g+1, over F_q with q odd.
 *
 * A point Q with l[Q - inf] generic is lifted to the p-adics, the alternant system with
 * right-hand side G = (l / v(t)) (1, u, ..., u^{g-1}) is solved for U(t, z) = first Mumford
 * coordinate of l[Q(t) - inf], Q(t) = (u(t), v(t)), u = t + x_Q, and the coefficients of U
 * are reconstructed as rational functions of u over F_q. The second coordinate V follows
 * from V^2 = f mod U at a longer t-adic order.
 */

#pragma once

#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "alternant.hpp"
#include "extension.hpp"
#include "jacobian.hpp"
#include "padic_float.hpp"
#include "reconstruct.hpp"

namespace hyperdiv {

struct CurvePoint {
  RingElem x, y;
};

/// U = X^g + sum d_i(x)/d_g(x) X^i and V = y sum e_i(x)/e_g(x) X^i at a generic Q = (x, y).
struct DivisionPolys {
  u64 ell = 0;
  std::size_t g = 0;
  std::vector<Poly> d;  // g+1 entries, d[g] monic
  std::vector<Poly> e;  // g+1 entries, e[g] monic
};

struct PointExpansion {
  Series u;  // t + x_Q
  Series v;  // sqrt(f(u)) with v(0) = y_Q
};

struct PointSelection {
  CurvePoint Q;
  Mumford D0;  // l[Q - inf] over F_q
};

struct LiftedInstance {
  CurveModel C;
  CurvePoint Q;
  Mumford D;
};

struct PipelineOptions {
  int retries = 8;
  bool verify = true;
  std::size_t verify_samples = 20;
  std::optional<u64> seed;  // seeded candidate order; the default scans x = 0, 1, 2, ...
};

/// Extra p-adic digits added per attempt when lifting l[Q - inf].
inline constexpr int kLiftGuardDigits = 8;
/// Lifts of x_Q tried before a point is given up.
inline constexpr int kLiftAttempts = 4;

namespace detail {

inline Poly residue_poly(const Poly& P) {
  const CtxPtr res = P.ctx()->residue();
  std::vector<RingElem> c;
  for (std::size_t i = 0; i < P.size(); ++i) c.push_back(reduce_residue(P.coeff(i)));
  return Poly(res, c);
}

/// Coefficientwise lift with zero-filled high digits.
inline Poly lift_poly(const Poly& P, const CtxPtr& target) {
  std::vector<RingElem> c;
  for (std::size_t i = 0; i < P.size(); ++i) c.push_back(change_precision(P.coeff(i), target));
  return Poly(target, c);
}

inline void require_residue_curve(const CurveModel& C) {
  if (C.f.ctx()->precision() != 1) throw ContractViolation("the curve must be given over the residue field");
  if (C.f.ctx()->prime() == 2) throw ContractViolation("p must be odd");
}

inline void require_ell(const CurveModel& C, u64 ell) {
  if (ell <= C.g) throw ContractViolation("l must exceed the genus");
  if (std::gcd(ell, C.f.ctx()->prime()) != 1) throw ContractViolation("l must be coprime to p");
}

/// Largest R with p^R < 2^62.
inline int max_precision(u64 p) {
  int R = 1;
  for (u64 pw = p; pw < (u64{1} << 62) / p; pw *= p) ++R;
  return R;
}

inline Poly lcm(const Poly& a, const Poly& b) { return make_monic(divrem(a * b, gcd(a, b)).first); }

/// Common monic denominator D and numerators P_i = D S_i, all of degree <= bound,
/// from series known to 2 bound + 1 terms.
inline std::pair<std::vector<Poly>, Poly> reconstruct_common(const std::vector<Series>& S, std::size_t bound) {
  const std::size_t K = 2 * bound + 1;
  Poly den = pade(S.front(), bound, bound).den;
  while (true) {
    std::vector<Poly> nums;
    for (const auto& s : S) {
      Poly P = mul_trunc(den, Poly::from_raw(s.ctx(), s.truncated(K).raw()), K);
      if (P.degree() > static_cast<int>(bound)) {
        den = lcm(den, pade(s, bound, bound).den);
        if (den.degree() > static_cast<int>(bound)) throw ReconstructionFailure("common denominator exceeds the degree bound");
        break;
      }
      nums.push_back(std::move(P));
    }
    if (nums.size() == S.size()) return {std::move(nums), std::move(den)};
  }
}

}  // namespace detail

/// deg U0 = g, U0 squarefree, and U0 coprime to V0 and to f (no Weierstrass point in the support).
inline bool is_generic(const CurveModel& C, const Mumford& D0) {
  if (D0.U.degree() != static_cast<int>(C.g)) return false;
  if (gcd(D0.U, D0.U.derivative()).degree() != 0) return false;
  if (gcd(D0.U, D0.V).degree() != 0) return false;
  return gcd(D0.U, C.f).degree() == 0;
}

/// Enumerates affine non-Weierstrass points Q of C(F_q) with l[Q - inf] generic.
class PointSelector {
 public:
  PointSelector(const CurveModel& C, u64 ell, std::optional<u64> seed = std::nullopt) : C_(C), ell_(ell) {
    detail::require_residue_curve(C);
    detail::require_ell(C, ell);
    q_ = C.f.ctx()->residue_size();
    if (seed) {
      // x index = a i + b mod q with gcd(a, q) = 1 is a seeded permutation of F_q
      std::mt19937_64 rng(*seed);
      do a_ = rng() % q_; while (std::gcd(a_, q_) != 1);
      b_ = rng() % q_;
    }
  }

  std::optional<PointSelection> next() {
    const CtxPtr& ctx = C_.f.ctx();
    while (i_ < q_) {
      const u64 k = static_cast<u64>((static_cast<u128>(a_) * i_ + b_) % q_);
      ++i_;
      RingElem x = element_from_index(ctx, k);
      RingElem fx = horner(std::span<const RingElem>(C_.f.coeffs()), x);
      if (fx.is_zero()) continue;
      auto y = field_sqrt(fx);
      if (!y) continue;
      Mumford D0 = scalar_mul(C_, ell_, from_point(C_, x, *y));
      if (!is_generic(C_, D0)) continue;
      ++found_;
      return PointSelection{{x, *y}, D0};
    }
    return std::nullopt;
  }

  std::size_t generic_found() const { return found_; }
  u64 candidates() const { return q_; }

 private:
  CurveModel C_;
  u64 ell_;
  u64 q_ = 0, a_ = 1, b_ = 0, i_ = 0;
  std::size_t found_ = 0;
};

inline PointSelection select_points(const CurveModel& C, u64 ell) {
  PointSelector sel(C, ell);
  if (auto s = sel.next()) return *s;
  throw NoGenericPoint("no affine point Q of C(F_q) makes l[Q - inf] generic");
}

/// Lifts C and Q to precision M and computes l[Q~ - inf] there. The scalar multiplication runs
/// in floating p-adic arithmetic with guard digits, raised until the result is known to M digits.
/// The first lift of x_Q is zero-filled; when an intermediate multiple lands too close to
/// infinity for every available guard, x_Q is lifted again with seeded random high digits.
inline LiftedInstance lift_instance(const CurveModel& C, const CurvePoint& Q, const Mumford& D0, u64 ell, int M) {
  detail::require_residue_curve(C);
  const CtxPtr& res = C.f.ctx();
  const u64 p = res->prime();
  const CtxPtr ctxM = res->with_precision(M);
  const CurveModel Ct = make_curve(detail::lift_poly(C.f, ctxM));
  const int cap = detail::max_precision(p);
  if (M > cap) throw ContractViolation("lift_instance: precision exceeds the word-size ring");
  std::mt19937_64 rng(ell);
  for (int attempt = 0; attempt < kLiftAttempts; ++attempt) {
    std::vector<u64> high(res->degree());
    if (attempt > 0)
      for (auto& h : high) h = rng();
    for (int R = std::min(cap, M + kLiftGuardDigits);; R = std::min(cap, R + kLiftGuardDigits)) {
      const CtxPtr ctxR = res->with_precision(R);
      const Poly fR = detail::lift_poly(C.f, ctxR);
      const RingElem xR = change_precision(Q.x, ctxR) + RingElem(ctxR, high) * RingElem(ctxR, static_cast<long long>(p));
      const RingElem yR = hensel_sqrt(horner(std::span<const RingElem>(fR.coeffs()), xR), change_precision(Q.y, ctxR));
      CurveModelT<PAdicPoly> Cf{PAdicPoly::from_fixed(ctxR, fR, R), C.g};
      MumfordT<PAdicPoly> P{PAdicPoly::from_fixed(ctxR, Poly::linear(-xR), R), PAdicPoly::from_fixed(ctxR, Poly::constant(yR), R)};
      try {
        auto Df = scalar_mul(Cf, ell, P);
        if (Df.U.degree() == static_cast<int>(C.g)) {
          Mumford D{Df.U.to_fixed(ctxM), Df.V.to_fixed(ctxM)};
          if (is_valid(Ct, D) && reduce_residue(D) == D0)
            return {Ct, {change_precision(xR, ctxM), change_precision(yR, ctxM)}, D};
        }
      } catch (const NonUnitPivot&) {
      } catch (const DivisionPrecisionError&) {
      }
      if (R == cap) break;
    }
  }
  throw NonUnitPivot("lift_instance: l[Q - inf] could not be lifted to the working precision");
}

inline PointExpansion point_expansion(const CurveModel& C, const CurvePoint& Q, std::size_t trunc) {
  Series u = Series::from_poly(Poly::linear(Q.x), trunc);
  Series v = sqrt(eval_poly(C.f, u), Q.y);
  return {u, v};
}

/// G_i = l u^{i-1} / v modulo t^{n+1}.
inline std::vector<Series> build_G(const PointExpansion& pe, u64 ell, std::size_t g, std::size_t n) {
  const Series u = pe.u.truncated(n + 1);
  const Series w = inv(pe.v.truncated(n + 1)).scaled(RingElem(u.ctx(), static_cast<long long>(ell)));
  std::vector<Series> G;
  Series pw = Series::constant(RingElem::one(u.ctx()), n + 1);
  for (std::size_t i = 0; i < g; ++i) {
    G.push_back(mul(w, pw));
    pw = mul(pw, u);
  }
  return G;
}

/// Steps 3 to 7 for one selected point. Throws ReconstructionFailure, NonUnitPivot or
/// DivisionPrecisionError when the point turns out to be unsuitable.
inline DivisionPolys division_polys_at(const CurveModel& C, u64 ell, const PointSelection& sel) {
  detail::require_residue_curve(C);
  detail::require_ell(C, ell);
  if (C.g < 2) throw ContractViolation("division polynomials need g > 1");
  const std::size_t g = C.g;
  const CtxPtr& res = C.f.ctx();
  const u64 p = res->prime();
  const std::size_t n = 2 * g * ell * ell;
  const int M = alternant_required_precision(p, 1, n, g);
  const auto [db, eb] = degree_bounds(g, ell);

  LiftedInstance L = lift_instance(C, sel.Q, sel.D0, ell, M);
  const PointExpansion pe = point_expansion(L.C, L.Q, n + 1);
  AlternantInput in{g, n, 1, build_G(pe, ell, g, n), L.C.f, L.D.U, L.D.V};
  const AlternantOutput out = alternant_solve(in);

  // U reduced to F_q; its coefficients are d_i(u)/d_g(u)
  std::vector<Series> Uc;
  for (std::size_t i = 0; i < g; ++i) {
    const Series s = out.U.coeff(i);
    std::vector<RingElem> c;
    for (std::size_t k = 0; k <= n; ++k) c.push_back(reduce_residue(s.coeff(k)));
    Uc.emplace_back(res, n + 1, c);
  }
  auto [dnum, dden] = detail::reconstruct_common(Uc, db);

  // V from V^2 = f mod U, with U re-expanded from the d_i to 2 eb + 1 terms
  const std::size_t K = 2 * eb + 1;
  const Poly dinv = inv_trunc(dden, K);
  std::vector<Series> Ue;
  for (const auto& P : dnum) Ue.push_back(Series::from_poly(mul_trunc(P, dinv, K), K));
  Ue.push_back(Series::constant(RingElem::one(res), K));
  const PolyZ U(res, K, Ue);
  PolyZ W = PolyZ::from_poly(detail::inverse_mod_monic(sel.D0.V, sel.D0.U), 1);
  for (std::size_t len = 1; len < K;) {
    len = std::min(2 * len, K);
    W = qr_inv_sqrt_step(W.padded(len), C.f, ModU(U.truncated(len), len));
  }
  const PolyZ V = ModU(U, K).rem(mul(PolyZ::from_poly(C.f, K), W, K));
  const Series vinv = inv(point_expansion(C, sel.Q, K).v);
  std::vector<Series> Vc;
  for (std::size_t i = 0; i < g; ++i) Vc.push_back(mul(V.coeff(i), vinv));
  auto [enum_, eden] = detail::reconstruct_common(Vc, eb);

  // t = x - x_Q
  const RingElem back = -sel.Q.x;
  DivisionPolys dp{ell, g, {}, {}};
  for (const auto& P : dnum) dp.d.push_back(taylor_shift(P, back));
  dp.d.push_back(taylor_shift(dden, back));
  for (const auto& P : enum_) dp.e.push_back(taylor_shift(P, back));
  dp.e.push_back(taylor_shift(eden, back));
  for (std::size_t i = 0; i <= g; ++i) {
    if (dp.d[i].degree() > static_cast<int>(db) || dp.e[i].degree() > static_cast<int>(eb))
      throw ReconstructionFailure("reconstructed polynomial exceeds its degree bound");
  }
  return dp;
}

/// Compares l[Q - inf] from the group law against the division polynomials evaluated at Q.
/// dp, C and Q must live over the same field.
inline bool verify_at_point(const DivisionPolys& dp, const CurveModel& C, const CurvePoint& Q) {
  const CtxPtr& ctx = C.f.ctx();
  check_same(ctx, Q.x.ctx());
  if (Q.y.is_zero()) throw BadEvaluationPoint("Q is a Weierstrass point");
  auto ev = [&](const Poly& P) { return horner(std::span<const RingElem>(P.coeffs()), Q.x); };
  const RingElem dg = ev(dp.d[dp.g]), eg = ev(dp.e[dp.g]);
  if (dg.is_zero() || eg.is_zero()) throw BadEvaluationPoint("a denominator vanishes at x_Q");
  const Mumford D = scalar_mul(C, dp.ell, from_point(C, Q.x, Q.y));
  std::vector<RingElem> uc, vc;
  const RingElem dgi = dg.inverse(), egi = eg.inverse();
  for (std::size_t i = 0; i < dp.g; ++i) {
    uc.push_back(ev(dp.d[i]) * dgi);
    vc.push_back(Q.y * ev(dp.e[i]) * egi);
  }
  uc.push_back(RingElem::one(ctx));
  return D.U == Poly(ctx, uc) && D.V == Poly(ctx, vc);
}

inline DivisionPolys embed(const DivisionPolys& dp, const FieldEmbedding& emb) {
  DivisionPolys r{dp.ell, dp.g, {}, {}};
  for (const auto& P : dp.d) r.d.push_back(emb(P));
  for (const auto& P : dp.e) r.e.push_back(emb(P));
  return r;
}

/// Smallest k with q^k >= 4096, so random points of C(F_{q^k}) rarely hit a denominator.
inline int verification_degree(const CtxPtr& res) {
  const u64 q = res->residue_size();
  int k = 1;
  for (u64 Q = q; Q < 4096; Q *= q) ++k;
  return k;
}

struct VerifyReport {
  std::size_t checked = 0;
  std::optional<CurvePoint> failure;  // over the verification field
  bool ok(std::size_t samples) const { return !failure && checked >= samples; }
};

/// verify_at_point at `samples` random affine points of C over F_{q^k}, k = verification_degree.
inline VerifyReport verify_sample(const DivisionPolys& dp, const CurveModel& C, std::size_t samples, u64 seed) {
  detail::require_residue_curve(C);
  const FieldEmbedding emb(C.f.ctx(), verification_degree(C.f.ctx()), seed);
  const CtxPtr& F = emb.target();
  const DivisionPolys dpE = embed(dp, emb);
  const CurveModel CE{emb(C.f), C.g};
  const u64 Q = F->residue_size();
  std::mt19937_64 rng(seed);
  VerifyReport rep;
  for (std::size_t attempt = 0; rep.checked < samples && attempt < 100 * samples + 100; ++attempt) {
    RingElem x = element_from_index(F, rng() % Q);
    RingElem fx = horner(std::span<const RingElem>(CE.f.coeffs()), x);
    auto y = fx.is_zero() ? std::nullopt : field_sqrt(fx);
    if (!y) continue;
    if (rng() & 1) y = -*y;
    try {
      if (!verify_at_point(dpE, CE, {x, *y})) {
        rep.failure = CurvePoint{x, *y};
        return rep;
      }
      ++rep.checked;
    } catch (const BadEvaluationPoint&) {
    }
  }
  return rep;
}

/// Cantor l-division polynomials of C over F_q: p odd, g > 1, l > g, gcd(l, p) = 1.
inline DivisionPolys cantor_division_polys(const CurveModel& C, u64 ell, const PipelineOptions& opt = {}) {
  detail::require_residue_curve(C);
  detail::require_ell(C, ell);
  if (C.g < 2) throw ContractViolation("division polynomials need g > 1");
  PointSelector sel(C, ell, opt.seed);
  std::string log;
  int failures = 0;
  while (auto s = sel.next()) {
    try {
      DivisionPolys dp = division_polys_at(C, ell, *s);
      if (opt.verify) {
        VerifyReport rep = verify_sample(dp, C, opt.verify_samples, opt.seed.value_or(0));
        if (!rep.ok(opt.verify_samples)) throw ReconstructionFailure("output failed verification");
      }
      return dp;
    } catch (const ReconstructionFailure& e) {
      log += "\n  Q = (" + s->Q.x.to_string() + ", " + s->Q.y.to_string() + "): " + e.what();
    } catch (const NonUnitPivot& e) {
      log += "\n  Q = (" + s->Q.x.to_string() + ", " + s->Q.y.to_string() + "): " + e.what();
    } catch (const DivisionPrecisionError& e) {
      log += "\n  Q = (" + s->Q.x.to_string() + ", " + s->Q.y.to_string() + "): " + e.what();
    }
    if (++failures > opt.retries) throw RetriesExhausted("retry budget exhausted:" + log);
  }
  if (sel.generic_found() == 0) throw NoGenericPoint("no affine point Q of C(F_q) makes l[Q - inf] generic");
  throw RetriesExhausted("every generic point failed:" + log);
}

}  // namespace hyperdiv
