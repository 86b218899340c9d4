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
 * @file series.hpp
 * @brief Truncated power series in t over a RingCtx.
 *
 * A Series carries its own truncation: trunc() coefficients, t^0 up to
 * t^{trunc()-1}. Binary operations truncate to the smaller operand.
 */

#pragma once

#include <algorithm>
#include <ostream>
#include <vector>

#include "poly.hpp"
#include "ring.hpp"

namespace hyperdiv {

class Series {
 public:
  Series() = default;
  Series(CtxPtr ctx, std::size_t trunc) : ctx_(std::move(ctx)), n_(trunc), c_(trunc * ctx_->degree(), 0) {}
  Series(CtxPtr ctx, std::size_t trunc, const std::vector<RingElem>& coeffs) : Series(std::move(ctx), trunc) {
    for (std::size_t i = 0; i < coeffs.size() && i < n_; ++i) set(i, coeffs[i]);
  }
  static Series from_ints(CtxPtr ctx, std::size_t trunc, const std::vector<long long>& v) {
    Series s(ctx, trunc);
    for (std::size_t i = 0; i < v.size() && i < trunc; ++i) s.c_[i * ctx->degree()] = ctx->from_int(v[i]);
    return s;
  }
  static Series from_poly(const Poly& p, std::size_t trunc) {
    Series s(p.ctx(), trunc);
    const std::size_t k = std::min(trunc, p.size()) * p.ctx()->degree();
    std::copy(p.raw().begin(), p.raw().begin() + k, s.c_.begin());
    return s;
  }
  /// Takes a flat array of trunc * degree() reduced residues.
  static Series from_raw(CtxPtr ctx, std::size_t trunc, std::vector<u64> flat) {
    Series s;
    s.ctx_ = std::move(ctx);
    s.n_ = trunc;
    flat.resize(trunc * s.ctx_->degree(), 0);
    s.c_ = std::move(flat);
    return s;
  }
  static Series constant(const RingElem& c, std::size_t trunc) {
    Series s(c.ctx(), trunc);
    if (trunc) s.set(0, c);
    return s;
  }

  const CtxPtr& ctx() const { return ctx_; }
  std::size_t trunc() const { return n_; }
  RingElem coeff(std::size_t i) const {
    if (i >= n_) return RingElem(ctx_);
    return RingElem(ctx_, std::span<const u64>(c_.data() + i * ctx_->degree(), ctx_->degree()));
  }
  void set(std::size_t i, const RingElem& v) {
    check_same(ctx_, v.ctx());
    if (i >= n_) throw ContractViolation("series coefficient index beyond truncation");
    std::copy(v.data(), v.data() + ctx_->degree(), c_.begin() + i * ctx_->degree());
  }
  const u64* ptr(std::size_t i) const { return c_.data() + i * ctx_->degree(); }
  u64* ptr(std::size_t i) { return c_.data() + i * ctx_->degree(); }
  const std::vector<u64>& raw() const { return c_; }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u64 x) { return x == 0; });
  }

  /// Keeps the first k coefficients (k <= trunc()).
  Series truncated(std::size_t k) const {
    if (k >= n_) return *this;
    Series s(ctx_, k);
    std::copy(c_.begin(), c_.begin() + k * ctx_->degree(), s.c_.begin());
    return s;
  }
  /// Same coefficients, zero-padded to a longer truncation.
  Series padded(std::size_t k) const {
    Series s = *this;
    if (k > n_) {
      s.n_ = k;
      s.c_.resize(k * ctx_->degree(), 0);
    }
    return s;
  }
  Poly to_poly() const { return Poly::from_raw(ctx_, c_); }

  Series& operator+=(const Series& o) {
    check_same(ctx_, o.ctx_);
    shrink_to(o.n_);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = ctx_->add_mod(c_[i], o.c_[i]);
    return *this;
  }
  Series& operator-=(const Series& o) {
    check_same(ctx_, o.ctx_);
    shrink_to(o.n_);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = ctx_->sub_mod(c_[i], o.c_[i]);
    return *this;
  }
  Series operator-() const {
    Series r = *this;
    for (auto& x : r.c_) x = ctx_->sub_mod(0, x);
    return r;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  Series scaled(const RingElem& s) const {
    check_same(ctx_, s.ctx());
    Series r(ctx_, n_);
    for (std::size_t i = 0; i < n_; ++i) ctx_->mul(ptr(i), s.data(), r.ptr(i));
    return r;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.n_ == b.n_ && (a.n_ == 0 || (a.ctx_->same_as(*b.ctx_) && a.c_ == b.c_));
  }

  friend std::ostream& operator<<(std::ostream& os, const Series& x) { return os << x.to_string(); }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < n_; ++i) s += (i ? " " : "") + coeff(i).to_string();
    return "[" + s + "] + O(t^" + std::to_string(n_) + ")";
  }

 private:
  void shrink_to(std::size_t k) {
    if (k < n_) {
      n_ = k;
      c_.resize(k * ctx_->degree());
    }
  }

  CtxPtr ctx_;
  std::size_t n_ = 0;
  std::vector<u64> c_;
};

/// Product truncated to the given order (default: the smaller operand truncation).
inline Series mul(const Series& a, const Series& b, std::size_t trunc) {
  check_same(a.ctx(), b.ctx());
  trunc = std::min({trunc, a.trunc(), b.trunc()});
  Series r(a.ctx(), trunc);
  detail::convolve(*a.ctx(), a.raw().data(), std::min(a.trunc(), trunc), b.raw().data(), std::min(b.trunc(), trunc),
                   r.ptr(0), trunc);
  return r;
}
inline Series mul(const Series& a, const Series& b) { return mul(a, b, std::min(a.trunc(), b.trunc())); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }

/// Antiderivative with zero constant term; trunc grows by one.
inline Series integrate(const Series& a) {
  Series r(a.ctx(), a.trunc() + 1);
  for (std::size_t i = 0; i < a.trunc(); ++i) {
    RingElem c = a.coeff(i);
    if (!c.is_zero()) r.set(i + 1, int_div(c, i + 1));
  }
  return r;
}

/// Termwise derivative; trunc drops by one.
inline Series derivative(const Series& a) {
  if (a.trunc() == 0) return a;
  Series r(a.ctx(), a.trunc() - 1);
  const CtxPtr& ctx = a.ctx();
  for (std::size_t i = 1; i < a.trunc(); ++i) ctx->scale(a.ptr(i), ctx->from_int(static_cast<long long>(i)), r.ptr(i - 1));
  return r;
}

/// Multiplicative inverse by Newton iteration Q <- Q (2 - a Q).
inline Series inv(const Series& a) {
  if (a.trunc() == 0) return a;
  if (!a.coeff(0).is_unit()) throw NonUnitConstantTerm("series inverse needs a unit constant term");
  const std::size_t n = a.trunc();
  Series q = Series::constant(a.coeff(0).inverse(), 1);
  const RingElem two(a.ctx(), 2);
  for (std::size_t k = 1; k < n;) {
    k = std::min(2 * k, n);
    Series qk = q.padded(k);
    Series e = mul(a, qk, k);  // 1 + O(t^{old k})
    e = -e;
    e.set(0, e.coeff(0) + two);
    q = mul(qk, e, k);
  }
  return q;
}

/// Inverse square root r with r(0) = y0^{-1}: Newton r <- r (3 - a r^2) / 2.
inline Series inv_sqrt(const Series& a, const RingElem& y0) {
  check_same(a.ctx(), y0.ctx());
  if (a.ctx()->prime() == 2) throw ContractViolation("square roots need odd p");
  const std::size_t n = a.trunc();
  if (n == 0) return a;
  if (!y0.is_unit() || !(y0 * y0 == a.coeff(0))) throw NotASquare("sqrt: y0^2 differs from the constant term");
  const RingElem half = RingElem(a.ctx(), 2).inverse();
  const RingElem three(a.ctx(), 3);
  Series r = Series::constant(y0.inverse(), 1);
  for (std::size_t k = 1; k < n;) {
    k = std::min(2 * k, n);
    Series rk = r.padded(k);
    Series e = mul(a, mul(rk, rk, k), k);
    e = -e;
    e.set(0, e.coeff(0) + three);
    r = mul(rk, e, k).scaled(half);
  }
  return r;
}

/// Square root s with s(0) = y0, computed as a times the inverse square root.
inline Series sqrt(const Series& a, const RingElem& y0) { return mul(a, inv_sqrt(a, y0)); }

/// P(a) truncated to trunc(a). The shape a = t + c takes the Taylor-shift path.
inline Series eval_poly(const Poly& P, const Series& a) {
  check_same(P.ctx(), a.ctx());
  const std::size_t n = a.trunc();
  bool shift_shape = n >= 2 && a.coeff(1) == RingElem::one(a.ctx());
  for (std::size_t i = 2; shift_shape && i < n; ++i) shift_shape = a.coeff(i).is_zero();
  if (shift_shape) return Series::from_poly(taylor_shift(P, a.coeff(0)), n);
  Series acc(a.ctx(), n);
  for (std::size_t i = P.size(); i-- > 0;) {
    acc = mul(acc, a);
    if (n) acc.set(0, acc.coeff(0) + P.coeff(i));
  }
  return acc;
}

}  // namespace hyperdiv
