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
 * @file reconstruct.hpp
 * @brief Pade approximants over the residue field and the degree bounds of the division polynomials.
 *
 * pade runs the extended Euclidean algorithm on (t^K, S) and stops at the first remainder of
 * degree at most dnum. Above kHalfGcdThreshold the remainder sequence is jumped with a
 * half-gcd recursion instead of being walked one quotient at a time.
 */

#pragma once

#include <array>
#include <utility>

#include "poly.hpp"
#include "series.hpp"

namespace hyperdiv {

struct RationalFraction {
  Poly num;
  Poly den;  // monic
};

inline constexpr std::size_t kHalfGcdThreshold = 128;

namespace detail {

/// Row-major 2x2 polynomial matrix acting on column vectors (a, b).
using PolyMat = std::array<Poly, 4>;

inline PolyMat mat_identity(const CtxPtr& ctx) {
  return {Poly::from_ints(ctx, {1}), Poly(ctx), Poly(ctx), Poly::from_ints(ctx, {1})};
}

inline PolyMat mat_mul(const PolyMat& A, const PolyMat& B) {
  return {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3], A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3]};
}

inline std::pair<Poly, Poly> mat_apply(const PolyMat& A, const Poly& a, const Poly& b) {
  return {A[0] * a + A[1] * b, A[2] * a + A[3] * b};
}

/// One Euclidean step (a, b) -> (b, a mod b), recorded into M.
inline void euclid_step(Poly& a, Poly& b, PolyMat& M) {
  auto [q, r] = divrem(a, b);
  M = {M[2], M[3], M[0] - q * M[2], M[1] - q * M[3]};
  a = std::move(b);
  b = std::move(r);
}

/// Plain Euclid until deg b < m.
inline PolyMat euclid_until(Poly a, Poly b, int m) {
  PolyMat M = mat_identity(a.ctx());
  while (b.degree() >= m) euclid_step(a, b, M);
  return M;
}

/// Matrix M with M (a, b) = (r_j, r_{j+1}) consecutive remainders, deg r_j >= ceil(deg a / 2) > deg r_{j+1}.
/// Requires deg a > deg b.
inline PolyMat half_gcd(const Poly& a0, const Poly& b0, std::size_t threshold) {
  const int n = a0.degree();
  const int m = (n + 1) / 2;
  if (b0.degree() < m) return mat_identity(a0.ctx());
  if (static_cast<std::size_t>(n) < threshold) return euclid_until(a0, b0, m);
  PolyMat R = half_gcd(a0.shifted_down(m), b0.shifted_down(m), threshold);
  auto [a, b] = mat_apply(R, a0, b0);
  if (b.degree() < m) return R;
  euclid_step(a, b, R);
  if (b.degree() < m) return R;
  const int k = 2 * m - a.degree();
  PolyMat S = half_gcd(a.shifted_down(k), b.shifted_down(k), threshold);
  return mat_mul(S, R);
}

/// Matrix carrying (a, b) to the consecutive remainders straddling m: deg r_j >= m > deg r_{j+1}.
inline PolyMat remainder_straddling(Poly a, Poly b, int m, std::size_t threshold) {
  PolyMat M = mat_identity(a.ctx());
  while (b.degree() >= m) {
    const int n = a.degree();
    const int k = std::max(0, 2 * m - n);
    PolyMat S = half_gcd(a.shifted_down(k), b.shifted_down(k), threshold);
    if (S == mat_identity(a.ctx())) {
      euclid_step(a, b, M);
      continue;
    }
    std::tie(a, b) = mat_apply(S, a, b);
    M = mat_mul(S, M);
  }
  return M;
}

inline RationalFraction pade_with_threshold(const Series& S, std::size_t dnum, std::size_t dden, std::size_t threshold) {
  const CtxPtr& ctx = S.ctx();
  if (ctx->precision() != 1) throw ContractViolation("pade works over the residue field");
  const std::size_t K = dnum + dden + 1;
  if (S.trunc() < K) throw ContractViolation("pade needs dnum + dden + 1 known terms");
  const Poly a = Poly::monomial(RingElem::one(ctx), K);
  const Poly b = Poly::from_raw(ctx, S.truncated(K).raw());
  const PolyMat M = remainder_straddling(a, b, static_cast<int>(dnum) + 1, threshold);
  Poly num = M[2] * a + M[3] * b;
  Poly den = M[3];
  if (den.is_zero() || den.degree() > static_cast<int>(dden)) throw ReconstructionFailure("pade: no denominator within the bound");
  // s t^K + den S = num with gcd(s, den) = 1, so a common factor of num and den divides t^K:
  // den(0) != 0 already makes the pair coprime
  if (den.coeff(0).is_zero()) throw ReconstructionFailure("pade: denominator vanishes at t = 0");
  const RingElem c = den.lead().inverse();
  return {num.scaled(c), den.scaled(c)};
}

}  // namespace detail

/// (num, den) with den S = num mod t^{dnum+dden+1}, deg num <= dnum, deg den <= dden, den monic, coprime.
inline RationalFraction pade(const Series& S, std::size_t dnum, std::size_t dden) {
  return detail::pade_with_threshold(S, dnum, dden, kHalfGcdThreshold);
}

/// Degree bounds (d, e) for the division polynomials of y^2 = f, deg f = 2g+1, base point at infinity.
inline std::pair<std::size_t, std::size_t> degree_bounds(std::size_t g, std::size_t ell) {
  if (g == 0 || ell <= g) throw ContractViolation("degree_bounds needs l > g >= 1");
  const std::size_t d = g * ell * ell;
  return {d, (3 * d + 1) / 2 + g + 1};
}

}  // namespace hyperdiv
