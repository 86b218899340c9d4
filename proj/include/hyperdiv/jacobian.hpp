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
 * @file jacobian.hpp
 * @brief Mumford representation and Cantor's group law for y^2 = f(x), deg f = 2g+1.
 *
 * The algorithms are written once over a polynomial type P providing +, -, *,
 * divrem, rem, xgcd and make_monic. With Poly over a fixed-point ring every
 * pivot is unit-checked (NonUnitPivot); with PAdicPoly, pivots of positive
 * valuation cost relative digits instead of failing.
 */

#pragma once

#include <cassert>
#include <type_traits>

#include "padic_float.hpp"
#include "poly.hpp"

namespace hyperdiv {

template <class P>
struct CurveModelT {
  P f;
  std::size_t g = 0;
};

template <class P>
struct MumfordT {
  P U;  // monic, deg <= g
  P V;  // deg V < deg U

  friend bool operator==(const MumfordT& a, const MumfordT& b) { return a.U == b.U && a.V == b.V; }
};

using CurveModel = CurveModelT<Poly>;
using Mumford = MumfordT<Poly>;

/// Validates y^2 = f: monic of odd degree 2g+1 with f mod p separable.
inline CurveModel make_curve(const Poly& f) {
  if (f.degree() < 3 || f.degree() % 2 == 0) throw ContractViolation("curve needs deg f = 2g+1 with g >= 1");
  if (!(f.lead() == RingElem::one(f.ctx()))) throw ContractViolation("curve polynomial must be monic");
  const CtxPtr res = f.ctx()->residue();
  std::vector<RingElem> c;
  for (std::size_t i = 0; i < f.size(); ++i) c.push_back(reduce_residue(f.coeff(i)));
  Poly fb(res, c), df(res);
  for (std::size_t i = 1; i < fb.size(); ++i) df.set_coeff(i - 1, fb.coeff(i) * RingElem(res, static_cast<long long>(i)));
  if (gcd(fb, df).degree() != 0) throw ContractViolation("curve polynomial is not separable mod p");
  return {f, static_cast<std::size_t>(f.degree() - 1) / 2};
}

template <class P>
MumfordT<P> identity(const CurveModelT<P>& C) {
  return {P::from_ints(C.f.ctx(), {1}), P(C.f.ctx())};
}

template <class P>
bool is_identity(const MumfordT<P>& D) {
  return D.U.degree() == 0;
}

/// The class of Q - infinity.
inline Mumford from_point(const CurveModel& C, const RingElem& x, const RingElem& y) {
  check_same(C.f.ctx(), x.ctx());
  check_same(C.f.ctx(), y.ctx());
  if (!(y * y == horner(std::span<const RingElem>(C.f.coeffs()), x))) throw PointNotOnCurve("y^2 != f(x)");
  return {Poly::linear(-x), Poly::constant(y)};
}

template <class P>
MumfordT<P> neg(const MumfordT<P>& D) {
  return {D.U, -D.V};
}

/// U divides V^2 - f and deg V < deg U.
template <class P>
bool is_valid(const CurveModelT<P>& C, const MumfordT<P>& D) {
  if (D.U.is_zero() || D.V.degree() >= D.U.degree()) return false;
  return rem(D.V * D.V - C.f, D.U).is_zero();
}

/// Reduction: while deg U > g, U <- (f - V^2)/U and V <- -V mod U.
template <class P>
MumfordT<P> reduce(const CurveModelT<P>& C, MumfordT<P> D) {
  while (D.U.degree() > static_cast<int>(C.g)) {
    auto [q, r] = divrem(C.f - D.V * D.V, D.U);
    D.U = make_monic(q);
    D.V = rem(-D.V, D.U);
  }
  D.U = make_monic(D.U);
  D.V = rem(D.V, D.U);
  return D;
}

/// Cantor composition followed by reduction.
template <class P>
MumfordT<P> add(const CurveModelT<P>& C, const MumfordT<P>& A, const MumfordT<P>& B) {
  if (is_identity(A)) return B;
  if (is_identity(B)) return A;
  auto e = xgcd(A.U, B.U);  // d1 = e1 U1 + e2 U2
  auto c = xgcd(e.g, A.V + B.V);  // d = c1 d1 + c2 (V1 + V2)
  const P& d = c.g;
  const P s1 = c.s * e.s, s2 = c.s * e.t, s3 = c.t;
  P U = A.U * B.U;
  P V = s1 * A.U * B.V + s2 * B.U * A.V + s3 * (A.V * B.V + C.f);
  if (d.degree() > 0) {
    U = divrem(U, d * d).first;
    V = divrem(V, d).first;
  }
  U = make_monic(U);
  MumfordT<P> R = reduce(C, MumfordT<P>{U, rem(V, U)});
  // floating coefficients may legitimately run out of digits; the caller checks those
  if constexpr (std::is_same_v<P, Poly>) assert(is_valid(C, R));
  return R;
}

/// Left-to-right double-and-add: the partial multiples are the binary prefixes of ell.
template <class P>
MumfordT<P> scalar_mul(const CurveModelT<P>& C, u64 ell, const MumfordT<P>& D) {
  MumfordT<P> acc = identity(C);
  for (int b = 63; b >= 0; --b) {
    if (!is_identity(acc)) acc = add(C, acc, acc);
    if ((ell >> b) & 1) acc = add(C, acc, D);
  }
  return acc;
}

/// Coefficientwise reduction mod p of a fixed-point divisor.
inline Mumford reduce_residue(const Mumford& D) {
  auto red = [](const Poly& P) {
    const CtxPtr res = P.ctx()->residue();
    std::vector<RingElem> c;
    for (std::size_t i = 0; i < P.size(); ++i) c.push_back(reduce_residue(P.coeff(i)));
    return Poly(res, c);
  };
  return {red(D.U), red(D.V)};
}

}  // namespace hyperdiv
