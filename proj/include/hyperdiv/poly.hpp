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
 * @file poly.hpp
 * @brief Dense univariate polynomials over a RingCtx.
 *
 * Coefficients are stored flat, degree() residues per coefficient, low
 * degree first, with no trailing zero coefficient. Division by a polynomial
 * requires a unit leading coefficient; otherwise NonUnitPivot is thrown.
 */

#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kernels.hpp"
#include "ring.hpp"

namespace hyperdiv {

class Poly {
 public:
  Poly() = default;
  explicit Poly(CtxPtr ctx) : ctx_(std::move(ctx)) {}
  Poly(CtxPtr ctx, const std::vector<RingElem>& coeffs) : ctx_(std::move(ctx)) {
    const int d = ctx_->degree();
    c_.resize(coeffs.size() * d);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      check_same(ctx_, coeffs[i].ctx());
      std::copy(coeffs[i].data(), coeffs[i].data() + d, c_.begin() + i * d);
    }
    trim();
  }

  static Poly from_ints(CtxPtr ctx, const std::vector<long long>& v) {
    Poly r(ctx);
    r.c_.assign(v.size() * ctx->degree(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) r.c_[i * ctx->degree()] = ctx->from_int(v[i]);
    r.trim();
    return r;
  }
  /// Takes ownership of a flat coefficient array (entries must already be reduced).
  static Poly from_raw(CtxPtr ctx, std::vector<u64> flat) {
    Poly r(std::move(ctx));
    r.c_ = std::move(flat);
    r.trim();
    return r;
  }
  static Poly constant(const RingElem& c) { return Poly(c.ctx(), std::vector<RingElem>{c}); }
  static Poly monomial(const RingElem& c, std::size_t k) {
    Poly r(c.ctx());
    if (c.is_zero()) return r;
    r.c_.assign((k + 1) * c.ctx()->degree(), 0);
    std::copy(c.data(), c.data() + c.ctx()->degree(), r.c_.begin() + k * c.ctx()->degree());
    return r;
  }
  /// The polynomial t + c.
  static Poly linear(const RingElem& c) { return Poly(c.ctx(), std::vector<RingElem>{c, RingElem::one(c.ctx())}); }

  const CtxPtr& ctx() const { return ctx_; }
  std::size_t size() const { return ctx_ ? c_.size() / ctx_->degree() : 0; }
  int degree() const { return static_cast<int>(size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  RingElem coeff(std::size_t i) const {
    if (i >= size()) return RingElem(ctx_);
    return RingElem(ctx_, std::span<const u64>(c_.data() + i * ctx_->degree(), ctx_->degree()));
  }
  RingElem lead() const { return is_zero() ? RingElem(ctx_) : coeff(size() - 1); }
  std::vector<RingElem> coeffs() const {
    std::vector<RingElem> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(coeff(i));
    return out;
  }
  const u64* ptr(std::size_t i) const { return c_.data() + i * ctx_->degree(); }
  const std::vector<u64>& raw() const { return c_; }

  void set_coeff(std::size_t i, const RingElem& v) {
    check_same(ctx_, v.ctx());
    const int d = ctx_->degree();
    if (i >= size()) {
      if (v.is_zero()) return;
      c_.resize((i + 1) * d, 0);
    }
    std::copy(v.data(), v.data() + d, c_.begin() + i * d);
    trim();
  }

  void trim() {
    if (!ctx_) return;
    const int d = ctx_->degree();
    while (!c_.empty() && ctx_->is_zero(c_.data() + c_.size() - d)) c_.resize(c_.size() - d);
  }

  Poly& operator+=(const Poly& o) {
    check_same(ctx_, o.ctx_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    const u64 m = ctx_->modulus();
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
      u64 s = c_[i] + o.c_[i];
      c_[i] = s >= m ? s - m : s;
    }
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same(ctx_, o.ctx_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = ctx_->sub_mod(c_[i], o.c_[i]);
    trim();
    return *this;
  }
  Poly operator-() const {
    Poly r(ctx_);
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = ctx_->sub_mod(0, c_[i]);
    return r;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same(a.ctx_, b.ctx_);
    if (a.is_zero() || b.is_zero()) return Poly(a.ctx_);
    const std::size_t n = a.size() + b.size() - 1;
    std::vector<u64> out(n * a.ctx_->degree());
    detail::convolve(*a.ctx_, a.c_.data(), a.size(), b.c_.data(), b.size(), out.data(), n);
    return from_raw(a.ctx_, std::move(out));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Multiplication by a scalar.
  Poly scaled(const RingElem& s) const {
    check_same(ctx_, s.ctx());
    Poly r(ctx_);
    r.c_.resize(c_.size());
    const int d = ctx_->degree();
    for (std::size_t i = 0; i < size(); ++i) ctx_->mul(c_.data() + i * d, s.data(), r.c_.data() + i * d);
    r.trim();
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.ctx_ && b.ctx_ && a.ctx_->same_as(*b.ctx_) && a.c_ == b.c_;
  }

  RingElem eval(const RingElem& x) const {
    check_same(ctx_, x.ctx());
    RingElem acc(ctx_);
    for (std::size_t i = size(); i-- > 0;) acc = acc * x + coeff(i);
    return acc;
  }

  Poly derivative() const {
    Poly r(ctx_);
    if (size() <= 1) return r;
    const int d = ctx_->degree();
    r.c_.resize((size() - 1) * d);
    for (std::size_t i = 1; i < size(); ++i) ctx_->scale(ptr(i), ctx_->from_int(static_cast<long long>(i)), r.c_.data() + (i - 1) * d);
    r.trim();
    return r;
  }

  /// Remainder modulo t^n.
  Poly truncated(std::size_t n) const {
    if (n >= size()) return *this;
    Poly r(ctx_);
    r.c_.assign(c_.begin(), c_.begin() + n * ctx_->degree());
    r.trim();
    return r;
  }
  /// Multiplication by t^k.
  Poly shifted(std::size_t k) const {
    if (is_zero()) return *this;
    Poly r(ctx_);
    r.c_.assign(k * ctx_->degree(), 0);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }
  /// Exact division by t^k (drops the k lowest coefficients).
  Poly shifted_down(std::size_t k) const {
    if (k >= size()) return Poly(ctx_);
    Poly r(ctx_);
    r.c_.assign(c_.begin() + k * ctx_->degree(), c_.end());
    return r;
  }
  /// t^{n-1} p(1/t), for n >= size().
  Poly reversed(std::size_t n) const {
    const int d = ctx_->degree();
    std::vector<u64> out(n * d, 0);
    for (std::size_t i = 0; i < size() && i < n; ++i) std::copy(ptr(i), ptr(i) + d, out.begin() + (n - 1 - i) * d);
    return from_raw(ctx_, std::move(out));
  }

  friend std::ostream& operator<<(std::ostream& os, const Poly& x) { return os << x.to_string(); }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < size(); ++i) s += (i ? " " : "") + coeff(i).to_string();
    return "[" + s + "]";
  }

 private:
  CtxPtr ctx_;
  std::vector<u64> c_;
};

/// a * b mod t^n.
inline Poly mul_trunc(const Poly& a, const Poly& b, std::size_t n) {
  check_same(a.ctx(), b.ctx());
  if (a.is_zero() || b.is_zero() || n == 0) return Poly(a.ctx());
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t nout = std::min(full, n);
  std::vector<u64> out(nout * a.ctx()->degree());
  detail::convolve(*a.ctx(), a.raw().data(), a.size(), b.raw().data(), b.size(), out.data(), nout);
  return Poly::from_raw(a.ctx(), std::move(out));
}

/// Inverse of a modulo t^n by Newton iteration; a(0) must be a unit.
inline Poly inv_trunc(const Poly& a, std::size_t n) {
  if (a.coeff(0).valuation() > 0) throw NonUnitConstantTerm("inverse of a series with non-unit constant term");
  Poly q = Poly::constant(a.coeff(0).inverse());
  const Poly two = Poly::from_ints(a.ctx(), {2});
  for (std::size_t k = 1; k < n;) {
    k = std::min(2 * k, n);
    q = mul_trunc(q, two - mul_trunc(a.truncated(k), q, k), k);
  }
  return q.truncated(n);
}

namespace detail {

inline constexpr std::size_t kFastDivThreshold = 64;

inline std::pair<Poly, Poly> divrem_schoolbook(const Poly& a, const Poly& b) {
  const CtxPtr& ctx = a.ctx();
  const int d = ctx->degree();
  const RingElem inv_lead = b.lead().inverse();
  if (a.size() < b.size()) return {Poly(ctx), a};
  std::vector<u64> r = a.raw();
  const std::size_t nq = a.size() - b.size() + 1;
  std::vector<u64> q(nq * d, 0), t(d);
  for (std::size_t k = nq; k-- > 0;) {
    u64* rk = r.data() + (k + b.size() - 1) * d;
    if (ctx->is_zero(rk)) continue;
    u64* qk = q.data() + k * d;
    ctx->mul(rk, inv_lead.data(), qk);
    for (std::size_t j = 0; j < b.size(); ++j) {
      ctx->mul(qk, b.ptr(j), t.data());
      ctx->sub(r.data() + (k + j) * d, t.data(), r.data() + (k + j) * d);
    }
  }
  r.resize((b.size() - 1) * d);
  return {Poly::from_raw(ctx, std::move(q)), Poly::from_raw(ctx, std::move(r))};
}

}  // namespace detail

/// Euclidean division a = q b + r with deg r < deg b; lead(b) must be a unit.
inline std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  check_same(a.ctx(), b.ctx());
  if (b.is_zero()) throw ContractViolation("division by the zero polynomial");
  if (!b.lead().is_unit()) throw NonUnitPivot("polynomial division by a non-unit leading coefficient");
  if (a.size() < b.size()) return {Poly(a.ctx()), a};
  const std::size_t nq = a.size() - b.size() + 1;
  if (b.size() < detail::kFastDivThreshold || nq < detail::kFastDivThreshold) return detail::divrem_schoolbook(a, b);
  Poly rb = b.reversed(b.size());
  Poly rq = mul_trunc(a.reversed(a.size()).truncated(nq), inv_trunc(rb, nq), nq);
  Poly q = rq.reversed(nq);
  Poly r = (a - q * b).truncated(b.size() - 1);
  return {q, r};
}

inline Poly rem(const Poly& a, const Poly& b) { return divrem(a, b).second; }

inline Poly make_monic(const Poly& a) {
  if (a.is_zero()) return a;
  if (!a.lead().is_unit()) throw NonUnitPivot("cannot make a polynomial with non-unit leading coefficient monic");
  return a.scaled(a.lead().inverse());
}

struct XGcd {
  Poly g, s, t;  // s a + t b = g, g monic
};

/// Extended Euclid with a unit check at every pivot. The result is monic.
inline XGcd xgcd(const Poly& a, const Poly& b) {
  const CtxPtr& ctx = a.ctx();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::from_ints(ctx, {1}), s1(ctx), t0(ctx), t1 = Poly::from_ints(ctx, {1});
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  if (!r0.lead().is_unit()) throw NonUnitPivot("xgcd: non-unit leading coefficient");
  const RingElem c = r0.lead().inverse();
  return {r0.scaled(c), s0.scaled(c), t0.scaled(c)};
}

inline Poly gcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Poly r = rem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  return make_monic(r0);
}

/// Composition p(t + c), by divide and conquer on precomputed powers (t+c)^{2^i}.
inline Poly taylor_shift(const Poly& p, const RingElem& c) {
  check_same(p.ctx(), c.ctx());
  if (p.size() <= 1 || c.is_zero()) return p;
  std::vector<Poly> pw = {Poly::linear(c)};
  while ((std::size_t{1} << pw.size()) < p.size()) pw.push_back(pw.back() * pw.back());
  auto rec = [&](auto&& self, std::size_t lo, std::size_t len, int level) -> Poly {
    // shifts the slice [lo, lo+len) where len = 2^level (or less at the tail)
    if (len <= 16 || level == 0) {
      Poly acc(p.ctx());
      const Poly lin = Poly::linear(c);
      for (std::size_t i = std::min(len, p.size() - lo); i-- > 0;) acc = acc * lin + Poly::constant(p.coeff(lo + i));
      return acc;
    }
    const std::size_t half = std::size_t{1} << (level - 1);
    Poly low = self(self, lo, std::min(half, len), level - 1);
    if (len <= half || lo + half >= p.size()) return low;
    Poly high = self(self, lo + half, len - half, level - 1);
    return low + high * pw[level - 1];
  };
  int level = 0;
  while ((std::size_t{1} << level) < p.size()) ++level;
  return rec(rec, 0, std::size_t{1} << level, level);
}

}  // namespace hyperdiv
