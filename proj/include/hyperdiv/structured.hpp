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
 * @file structured.hpp
 * @brief Polynomials in z with power series coefficients, and the kernels
 *        built on them: Newton sums, Hankel products and arithmetic modulo
 *        (t^{n+1}, U) for monic U.
 *
 * Bivariate products are computed by one univariate convolution: the
 * coefficient of t^i z^k is placed at index i * Z + k where Z is the z-length
 * of the product, so carries never cross between t-degrees.
 */

#pragma once

#include <algorithm>
#include <vector>

#include "poly.hpp"
#include "series.hpp"

namespace hyperdiv {

/// Polynomial in z whose coefficients are series in t truncated at trunc().
class PolyZ {
 public:
  PolyZ() = default;
  PolyZ(CtxPtr ctx, std::size_t trunc) : ctx_(std::move(ctx)), n_(trunc) {}
  PolyZ(CtxPtr ctx, std::size_t trunc, std::vector<Series> coeffs) : ctx_(std::move(ctx)), n_(trunc), c_(std::move(coeffs)) {
    for (auto& s : c_) {
      check_same(ctx_, s.ctx());
      s = s.trunc() >= n_ ? s.truncated(n_) : s.padded(n_);
    }
    trim();
  }
  /// Lifts a polynomial with constant coefficients.
  static PolyZ from_poly(const Poly& p, std::size_t trunc) {
    std::vector<Series> c;
    for (std::size_t i = 0; i < p.size(); ++i) c.push_back(Series::constant(p.coeff(i), trunc));
    return PolyZ(p.ctx(), trunc, std::move(c));
  }
  /// The constant-in-t part, as a polynomial in z.
  Poly at_zero() const {
    std::vector<RingElem> c;
    for (const auto& s : c_) c.push_back(s.coeff(0));
    return Poly(ctx_, c);
  }

  const CtxPtr& ctx() const { return ctx_; }
  std::size_t trunc() const { return n_; }
  int zdeg() const { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }
  Series coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Series(ctx_, n_); }
  const std::vector<Series>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == Series::constant(RingElem::one(ctx_), n_); }

  void set(std::size_t k, const Series& s) {
    check_same(ctx_, s.ctx());
    if (k >= c_.size()) c_.resize(k + 1, Series(ctx_, n_));
    c_[k] = s.trunc() >= n_ ? s.truncated(n_) : s.padded(n_);
    trim();
  }

  PolyZ truncated(std::size_t trunc) const {
    if (trunc >= n_) return *this;
    std::vector<Series> c;
    for (const auto& s : c_) c.push_back(s.truncated(trunc));
    return PolyZ(ctx_, trunc, std::move(c));
  }
  PolyZ padded(std::size_t trunc) const {
    if (trunc <= n_) return *this;
    std::vector<Series> c;
    for (const auto& s : c_) c.push_back(s.padded(trunc));
    return PolyZ(ctx_, trunc, std::move(c));
  }
  /// Keeps the z-degrees below k.
  PolyZ mod_z(std::size_t k) const {
    PolyZ r = *this;
    if (r.c_.size() > k) r.c_.resize(k);
    r.trim();
    return r;
  }

  PolyZ& operator+=(const PolyZ& o) {
    check_same(ctx_, o.ctx_);
    align(o.n_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Series(ctx_, n_));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
    trim();
    return *this;
  }
  PolyZ& operator-=(const PolyZ& o) {
    check_same(ctx_, o.ctx_);
    align(o.n_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Series(ctx_, n_));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
    trim();
    return *this;
  }
  PolyZ operator-() const {
    PolyZ r = *this;
    for (auto& s : r.c_) s = -s;
    return r;
  }
  friend PolyZ operator+(PolyZ a, const PolyZ& b) { return a += b; }
  friend PolyZ operator-(PolyZ a, const PolyZ& b) { return a -= b; }

  PolyZ scaled(const RingElem& s) const {
    PolyZ r = *this;
    for (auto& c : r.c_) c = c.scaled(s);
    r.trim();
    return r;
  }

  friend bool operator==(const PolyZ& a, const PolyZ& b) {
    if (a.n_ != b.n_ || a.c_.size() != b.c_.size()) return false;
    for (std::size_t k = 0; k < a.c_.size(); ++k)
      if (!(a.c_[k] == b.c_[k])) return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) s += (k ? " + z^" + std::to_string(k) + "*" : "") + c_[k].to_string();
    return s.empty() ? "0" : s;
  }
  friend std::ostream& operator<<(std::ostream& os, const PolyZ& x) { return os << x.to_string(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  void align(std::size_t other) {
    if (other < n_) *this = truncated(other);
  }

  CtxPtr ctx_;
  std::size_t n_ = 0;
  std::vector<Series> c_;
};

namespace detail {

/// Packs a (t-truncated at trunc) into index i * Z + k layout.
inline std::vector<u64> pack_tz(const PolyZ& a, std::size_t trunc, std::size_t Z) {
  const int d = a.ctx()->degree();
  std::vector<u64> out(trunc * Z * d, 0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Series& s = a.coeffs()[k];
    const std::size_t lim = std::min(trunc, s.trunc());
    for (std::size_t i = 0; i < lim; ++i) std::copy(s.ptr(i), s.ptr(i) + d, out.begin() + (i * Z + k) * d);
  }
  return out;
}

}  // namespace detail

/// Product in z, truncated at t^trunc and (optionally) at z^zlimit.
inline PolyZ mul(const PolyZ& a, const PolyZ& b, std::size_t trunc, std::size_t zlimit = static_cast<std::size_t>(-1)) {
  check_same(a.ctx(), b.ctx());
  trunc = std::min({trunc, a.trunc(), b.trunc()});
  if (a.is_zero() || b.is_zero()) return PolyZ(a.ctx(), trunc);
  const PolyZ ax = a.mod_z(zlimit), bx = b.mod_z(zlimit);
  if (ax.is_zero() || bx.is_zero()) return PolyZ(a.ctx(), trunc);
  const std::size_t S = ax.size() + bx.size() - 1;  // row stride: no z-carry into the next t-degree
  const std::size_t Z = std::min(S, zlimit);
  const int d = a.ctx()->degree();
  std::vector<u64> pa = detail::pack_tz(ax, trunc, S), pb = detail::pack_tz(bx, trunc, S);
  std::vector<u64> pc(trunc * S * d);
  detail::convolve(*a.ctx(), pa.data(), trunc * S, pb.data(), trunc * S, pc.data(), trunc * S);
  std::vector<Series> c;
  for (std::size_t k = 0; k < Z; ++k) {
    std::vector<u64> flat(trunc * d);
    for (std::size_t i = 0; i < trunc; ++i) std::copy(pc.begin() + (i * S + k) * d, pc.begin() + (i * S + k + 1) * d, flat.begin() + i * d);
    c.push_back(Series::from_raw(a.ctx(), trunc, std::move(flat)));
  }
  return PolyZ(a.ctx(), trunc, std::move(c));
}
inline PolyZ operator*(const PolyZ& a, const PolyZ& b) { return mul(a, b, std::min(a.trunc(), b.trunc())); }

/// Multiplies every coefficient by the series s.
inline PolyZ mul_series(const PolyZ& a, const Series& s) {
  std::vector<Series> c;
  for (const auto& x : a.coeffs()) c.push_back(mul(x, s));
  return PolyZ(a.ctx(), std::min(a.trunc(), s.trunc()), std::move(c));
}

/// Inverse of a modulo z^k (a(t,0) must have a unit constant term), by Newton in z.
inline PolyZ inv_mod_z(const PolyZ& a, std::size_t k) {
  const std::size_t L = a.trunc();
  const Series one = Series::constant(RingElem::one(a.ctx()), L);
  PolyZ q(a.ctx(), L, {a.coeff(0) == one ? one : inv(a.coeff(0))});
  const PolyZ two = PolyZ::from_poly(Poly::from_ints(a.ctx(), {2}), L);
  for (std::size_t cur = 1; cur < k;) {
    cur = std::min(2 * cur, k);
    PolyZ e = mul(a.mod_z(cur), q, L, cur);
    q = mul(q, two - e, L, cur);
  }
  return q.mod_z(k);
}

/// z-reversal z^{len-1} a(1/z).
inline PolyZ reverse_z(const PolyZ& a, std::size_t len) {
  std::vector<Series> c(len, Series(a.ctx(), a.trunc()));
  for (std::size_t k = 0; k < a.size() && k < len; ++k) c[len - 1 - k] = a.coeffs()[k];
  return PolyZ(a.ctx(), a.trunc(), std::move(c));
}

/**
 * Reduction modulo a fixed monic U, caching the reversed inverse of U.
 */
class ModU {
 public:
  ModU(PolyZ U, std::size_t trunc) : U_(U.truncated(trunc)), L_(trunc) {
    if (U_.is_zero() || !U_.is_monic()) throw ContractViolation("ModU needs a monic modulus");
    g_ = static_cast<std::size_t>(U_.zdeg());
    revU_ = reverse_z(U_, g_ + 1);
  }

  const PolyZ& modulus() const { return U_; }
  std::size_t trunc() const { return L_; }

  /// Euclidean remainder of P by U in z, coefficients truncated at t^trunc.
  PolyZ rem(const PolyZ& P) const {
    PolyZ A = P.truncated(L_);
    if (A.size() <= g_) return A.padded(L_);
    const std::size_t dq = A.size() - g_;  // number of quotient coefficients
    ensure_inverse(dq);
    PolyZ rq = hyperdiv::mul(reverse_z(A, A.size()).mod_z(dq), inv_, L_, dq);
    PolyZ q = reverse_z(rq, dq);
    PolyZ r = A - hyperdiv::mul(q, U_, L_, g_);
    return r.mod_z(g_);
  }

  PolyZ mul(const PolyZ& a, const PolyZ& b) const { return rem(hyperdiv::mul(a, b, L_)); }

 private:
  void ensure_inverse(std::size_t k) const {
    if (inv_len_ >= k) return;
    // 2g + 2 covers f2 W^2 with deg f2 = 2g+1, so a Newton step builds the inverse once
    std::size_t want = std::max<std::size_t>(k, 2 * g_ + 2);
    inv_ = inv_mod_z(revU_, want);
    inv_len_ = want;
  }

  PolyZ U_;
  std::size_t L_;
  std::size_t g_ = 0;
  PolyZ revU_;
  mutable PolyZ inv_;
  mutable std::size_t inv_len_ = 0;
};

/// Remainder of P modulo (t^{n+1}, U) for monic U.
inline PolyZ qr_mod(const PolyZ& P, const PolyZ& U, std::size_t n) { return ModU(U, n + 1).rem(P); }

/// Power sums s_1..s_count of the roots of monic P, modulo t^{n+1}.
inline std::vector<Series> newton_sums(const PolyZ& P, std::size_t count, std::size_t n) {
  if (P.is_zero() || !P.is_monic()) throw ContractViolation("newton_sums needs a monic polynomial");
  const std::size_t L = std::min(n + 1, P.trunc());
  const std::size_t deg = static_cast<std::size_t>(P.zdeg());
  PolyZ Pt = P.truncated(L);
  PolyZ rev = reverse_z(Pt, deg + 1);  // P*, constant term 1
  // z-derivative of P*
  PolyZ drev(P.ctx(), L);
  for (std::size_t k = 1; k < rev.size(); ++k)
    drev.set(k - 1, rev.coeffs()[k].scaled(RingElem(P.ctx(), static_cast<long long>(k))));
  PolyZ f = -mul(drev.mod_z(count), inv_mod_z(rev, count), L, count);
  std::vector<Series> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(f.coeff(i));
  return out;
}

/// Hankel matrix (entries a_0..a_{2g-2}, A_ij = a_{i+j}) times v, modulo t^{n+1}.
inline std::vector<Series> hankel_prod(const std::vector<Series>& entries, const std::vector<Series>& v, std::size_t n) {
  const std::size_t g = v.size();
  if (g == 0 || entries.size() != 2 * g - 1) throw ContractViolation("hankel_prod needs 2g-1 entries for a length-g vector");
  const CtxPtr& ctx = v[0].ctx();
  std::size_t L = n + 1;
  for (const auto& s : entries) L = std::min(L, s.trunc());
  for (const auto& s : v) L = std::min(L, s.trunc());
  PolyZ f(ctx, L, entries);
  std::vector<Series> hc(g, Series(ctx, L));
  for (std::size_t j = 0; j < g; ++j) hc[g - 1 - j] = v[j];
  PolyZ h(ctx, L, hc);
  PolyZ w = mul(f, h, L, 2 * g - 1);
  std::vector<Series> out;
  for (std::size_t i = g - 1; i <= 2 * g - 2; ++i) out.push_back(w.coeff(i));
  return out;
}

/// One Newton step W <- (W/2)(3 - f2 W^2) modulo (t^{n+1}, U).
inline PolyZ qr_inv_sqrt_step(const PolyZ& W, const Poly& f2, const ModU& modU) {
  const std::size_t L = modU.trunc();
  const CtxPtr& ctx = f2.ctx();
  PolyZ Wl = W.padded(L).truncated(L);
  PolyZ W2 = modU.mul(Wl, Wl);
  PolyZ fW2 = modU.rem(mul(PolyZ::from_poly(f2, L), W2, L));
  PolyZ e = PolyZ::from_poly(Poly::from_ints(ctx, {3}), L) - fW2;
  return modU.mul(Wl, e).scaled(RingElem(ctx, 2).inverse());
}
inline PolyZ qr_inv_sqrt_step(const PolyZ& W, const Poly& f2, const PolyZ& U, std::size_t n) {
  return qr_inv_sqrt_step(W, f2, ModU(U, n + 1));
}

}  // namespace hyperdiv
