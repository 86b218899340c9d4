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
 * @file padic_float.hpp
 * @brief Floating-point p-adic numbers and polynomials over them.
 *
 * A nonzero PAdic is p^v u with u a unit known to rp digits; zero carries
 * only its absolute precision. Division by an element of positive valuation
 * costs no absolute digits of the quotient's unit part, which is what Cantor
 * arithmetic over the lifted curve needs when a pivot is divisible by p.
 * The unit part lives in a RingCtx whose precision caps rp.
 */

#pragma once

#include <algorithm>
#include <climits>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "ring.hpp"

namespace hyperdiv {

class PAdic {
 public:
  PAdic() = default;
  /// Exact zero at the cap precision of ctx.
  explicit PAdic(CtxPtr ctx) : ctx_(std::move(ctx)), v_(ctx_->precision()) {}
  PAdic(CtxPtr ctx, long long n) : PAdic(RingElem(ctx, n), ctx->precision()) {}

  /// x known modulo p^absprec (absprec <= precision of x's context).
  PAdic(const RingElem& x, int absprec) : ctx_(x.ctx()) {
    absprec = std::min(absprec, ctx_->precision());
    std::vector<u64> c(x.coeffs().begin(), x.coeffs().end());
    normalize(std::move(c), 0, absprec);
  }

  static PAdic zero(CtxPtr ctx, int absprec) {
    PAdic r(std::move(ctx));
    r.v_ = absprec;
    return r;
  }

  const CtxPtr& ctx() const { return ctx_; }
  bool is_zero() const { return zero_; }
  /// Valuation of a nonzero element; for zero, the absolute precision.
  int valuation() const { return v_; }
  int relative_precision() const { return zero_ ? 0 : rp_; }
  int absolute_precision() const { return zero_ ? v_ : v_ + rp_; }
  const std::vector<u64>& unit_digits() const { return u_; }

  /// The value modulo p^M in a fixed-point context; requires integrality and enough digits.
  RingElem to_fixed(const CtxPtr& target) const {
    const int M = target->precision();
    if (absolute_precision() < M) throw NonUnitPivot("p-adic lift lost too many digits");
    if (zero_ || v_ >= M) return RingElem(target);
    if (v_ < 0) throw NonUnitPivot("p-adic lift produced a non-integral coefficient");
    std::vector<u64> c = u_;
    const u64 pv = target->pow_p(v_), m = target->modulus();
    for (auto& x : c) x = detail::mulmod(x % m, pv, m);
    return RingElem(target, std::move(c));
  }

  PAdic operator-() const {
    PAdic r = *this;
    if (!zero_) {
      const u64 m = ctx_->pow_p(rp_);
      for (auto& x : r.u_) x = x ? m - x : 0;
    }
    return r;
  }

  friend PAdic operator+(const PAdic& a, const PAdic& b) {
    check_same(a.ctx_, b.ctx_);
    const int abs = std::min(a.absolute_precision(), b.absolute_precision());
    if (a.zero_ && b.zero_) return zero(a.ctx_, abs);
    if (a.zero_) return b.truncated_abs(abs);
    if (b.zero_) return a.truncated_abs(abs);
    const int vmin = std::min(a.v_, b.v_);
    const int rel = abs - vmin;
    const u64 m = a.ctx_->pow_p(rel);
    std::vector<u64> s(a.u_.size(), 0);
    auto accumulate = [&](const PAdic& x) {
      const int k = x.v_ - vmin;
      if (k >= rel) return;
      const u64 pk = a.ctx_->pow_p(k);
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = (s[i] + detail::mulmod(x.u_[i] % m, pk, m)) % m;
    };
    accumulate(a);
    accumulate(b);
    PAdic r(a.ctx_);
    r.normalize(std::move(s), vmin, rel);
    return r;
  }
  friend PAdic operator-(const PAdic& a, const PAdic& b) { return a + (-b); }

  friend PAdic operator*(const PAdic& a, const PAdic& b) {
    check_same(a.ctx_, b.ctx_);
    // for zero, v_ is the absolute precision, so the sum is right in every case
    if (a.zero_ || b.zero_) return zero(a.ctx_, a.v_ + b.v_);
    PAdic r(a.ctx_);
    r.zero_ = false;
    r.v_ = a.v_ + b.v_;
    r.rp_ = std::min(a.rp_, b.rp_);
    r.u_.assign(a.u_.size(), 0);
    a.ctx_->mul(a.u_.data(), b.u_.data(), r.u_.data());
    r.chop();
    return r;
  }

  PAdic inverse() const {
    if (zero_) throw DivisionPrecisionError("p-adic inverse of an element indistinguishable from zero");
    PAdic r = *this;
    r.v_ = -v_;
    ctx_->inverse(u_.data(), r.u_.data());
    r.chop();
    return r;
  }
  friend PAdic operator/(const PAdic& a, const PAdic& b) { return a * b.inverse(); }

  PAdic& operator+=(const PAdic& o) { return *this = *this + o; }
  PAdic& operator-=(const PAdic& o) { return *this = *this - o; }
  PAdic& operator*=(const PAdic& o) { return *this = *this * o; }

 private:
  PAdic truncated_abs(int abs) const {
    if (zero_ || abs <= v_) return zero(ctx_, std::min(abs, absolute_precision()));
    PAdic r = *this;
    r.rp_ = std::min(rp_, abs - v_);
    r.chop();
    return r;
  }

  // digits beyond rp are kept at zero
  void chop() {
    const u64 m = ctx_->pow_p(rp_);
    for (auto& x : u_) x %= m;
  }

  // value p^base * s with s known modulo p^rel
  void normalize(std::vector<u64> s, int base, int rel) {
    if (rel <= 0) {
      zero_ = true;
      v_ = base + std::max(rel, 0);
      u_.clear();
      return;
    }
    const u64 p = ctx_->prime(), m = ctx_->pow_p(rel);
    int w = rel;
    for (auto& x : s) {
      x %= m;
      if (x == 0) continue;
      int k = 0;
      for (u64 y = x; y % p == 0; y /= p) ++k;
      w = std::min(w, k);
    }
    if (w >= rel) {
      zero_ = true;
      v_ = base + rel;
      u_.clear();
      return;
    }
    const u64 pw = ctx_->pow_p(w);
    for (auto& x : s) x /= pw;
    zero_ = false;
    v_ = base + w;
    rp_ = rel - w;
    u_ = std::move(s);
  }

  CtxPtr ctx_;
  bool zero_ = true;
  int v_ = 0;
  int rp_ = 0;
  std::vector<u64> u_;
};

/// Dense polynomial with PAdic coefficients; leading coefficients indistinguishable from zero are dropped.
class PAdicPoly {
 public:
  PAdicPoly() = default;
  explicit PAdicPoly(CtxPtr ctx) : ctx_(std::move(ctx)) {}
  PAdicPoly(CtxPtr ctx, std::vector<PAdic> c) : ctx_(std::move(ctx)), c_(std::move(c)) { trim(); }

  static PAdicPoly from_ints(CtxPtr ctx, const std::vector<long long>& v) {
    std::vector<PAdic> c;
    for (long long x : v) c.emplace_back(ctx, x);
    return PAdicPoly(std::move(ctx), std::move(c));
  }
  /// Coefficients of a fixed-point polynomial, each known modulo p^absprec.
  static PAdicPoly from_fixed(const CtxPtr& ctx, const Poly& P, int absprec) {
    std::vector<PAdic> c;
    for (std::size_t i = 0; i < P.size(); ++i) c.emplace_back(change_precision(P.coeff(i), ctx), absprec);
    return PAdicPoly(ctx, std::move(c));
  }
  Poly to_fixed(const CtxPtr& target) const {
    std::vector<RingElem> c;
    for (const auto& x : c_) c.push_back(x.to_fixed(target));
    return Poly(target, c);
  }

  const CtxPtr& ctx() const { return ctx_; }
  std::size_t size() const { return c_.size(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  PAdic coeff(std::size_t i) const { return i < c_.size() ? c_[i] : PAdic(ctx_); }
  PAdic lead() const { return is_zero() ? PAdic(ctx_) : c_.back(); }
  const std::vector<PAdic>& coeffs() const { return c_; }
  /// Smallest absolute precision among the coefficients.
  int absolute_precision() const {
    int a = ctx_->precision();
    for (const auto& x : c_) a = std::min(a, x.absolute_precision());
    return a;
  }

  PAdicPoly& operator+=(const PAdicPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), PAdic(ctx_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  PAdicPoly& operator-=(const PAdicPoly& o) { return *this += -o; }
  PAdicPoly operator-() const {
    PAdicPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend PAdicPoly operator+(PAdicPoly a, const PAdicPoly& b) { return a += b; }
  friend PAdicPoly operator-(PAdicPoly a, const PAdicPoly& b) { return a -= b; }
  friend PAdicPoly operator*(const PAdicPoly& a, const PAdicPoly& b) {
    if (a.is_zero() || b.is_zero()) return PAdicPoly(a.ctx_);
    std::vector<PAdic> c(a.size() + b.size() - 1, PAdic(a.ctx_));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return PAdicPoly(a.ctx_, std::move(c));
  }
  PAdicPoly scaled(const PAdic& s) const {
    PAdicPoly r = *this;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  CtxPtr ctx_;
  std::vector<PAdic> c_;
};

inline std::pair<PAdicPoly, PAdicPoly> divrem(const PAdicPoly& a, const PAdicPoly& b) {
  if (b.is_zero()) throw ContractViolation("divrem: division by zero polynomial");
  if (a.degree() < b.degree()) return {PAdicPoly(a.ctx()), a};
  const PAdic li = b.lead().inverse();
  std::vector<PAdic> r = a.coeffs(), q(a.size() - b.size() + 1, PAdic(a.ctx()));
  const std::size_t db = b.size() - 1;
  for (std::size_t k = r.size(); k-- > db;) {
    const PAdic c = r[k] * li;
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= c * b.coeff(j);
  }
  r.resize(db, PAdic(a.ctx()));
  return {PAdicPoly(a.ctx(), std::move(q)), PAdicPoly(a.ctx(), std::move(r))};
}

inline PAdicPoly rem(const PAdicPoly& a, const PAdicPoly& b) { return divrem(a, b).second; }

inline PAdicPoly make_monic(const PAdicPoly& a) { return a.is_zero() ? a : a.scaled(a.lead().inverse()); }

struct PAdicXGcd {
  PAdicPoly g, s, t;
};

/// Monic g = s a + t b.
inline PAdicXGcd xgcd(const PAdicPoly& a, const PAdicPoly& b) {
  const CtxPtr& ctx = a.ctx();
  PAdicPoly r0 = a, r1 = b;
  PAdicPoly s0 = PAdicPoly::from_ints(ctx, {1}), s1(ctx), t0(ctx), t1 = PAdicPoly::from_ints(ctx, {1});
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    PAdicPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const PAdic c = r0.lead().inverse();
  return {r0.scaled(c), s0.scaled(c), t0.scaled(c)};
}

}  // namespace hyperdiv
