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
 * @file ring.hpp
 * @brief Fixed-point arithmetic in unramified extensions of Z_p.
 *
 * An element is a representative of (Z/p^M)[x]/(h) where h is monic of
 * degree d and irreducible modulo p. Every operation is exact in that
 * quotient ring; divisions by non-units consume p-adic digits, and the
 * lost high digits are filled with zeros. With M = 1 the same type is the
 * finite field F_{p^d}.
 *
 * Moduli p^M are restricted to below 2^62 so that products of two
 * residues fit in an unsigned 128-bit integer.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"

namespace hyperdiv {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

/// Inverse of a modulo m for gcd(a, m) = 1; returns 0 when no inverse exists.
inline u64 invmod(u64 a, u64 m) {
  __int128 t = 0, nt = 1;
  __int128 r = m, nr = a % m;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) return 0;
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

// Dense polynomials over F_p, low degree first; used only for context setup
// and for inverting units of F_q before Newton lifting.
using FpPoly = std::vector<u64>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& b, u64 p) {
  fp_trim(a);
  const u64 inv_lead = invmod(b.back(), p);
  while (a.size() >= b.size()) {
    const u64 c = mulmod(a.back(), inv_lead, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, b[i], p)) % p;
    }
    fp_trim(a);
  }
  return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& h, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  return fp_mod(std::move(r), h, p);
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Ben-Or irreducibility test for monic h over F_p.
inline bool fp_irreducible(const FpPoly& h, u64 p) {
  const std::size_t d = h.size() - 1;
  if (d == 1) return true;
  FpPoly xpow = {0, 1};
  for (std::size_t i = 1; i <= d / 2; ++i) {
    // xpow <- xpow^p mod h
    FpPoly base = xpow, acc = {1};
    for (u64 e = p; e; e >>= 1) {
      if (e & 1) acc = fp_mulmod(acc, base, h, p);
      base = fp_mulmod(base, base, h, p);
    }
    xpow = acc;
    FpPoly diff = xpow;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    fp_trim(diff);
    FpPoly g = fp_gcd(h, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

/// Smallest monic irreducible of degree d over F_p in the order that reads
/// the non-leading coefficients as base-p digits, constant term least significant.
inline FpPoly smallest_irreducible(u64 p, int d) {
  if (d == 1) return {0, 1};
  FpPoly h(d + 1, 0);
  h[d] = 1;
  while (true) {
    if (h[0] != 0 && fp_irreducible(h, p)) return h;
    int i = 0;
    while (i < d) {
      if (++h[i] < p) break;
      h[i] = 0;
      ++i;
    }
    if (i == d) throw std::logic_error("no irreducible polynomial found");
  }
}

/// Inverse of a nonzero element a (degree < d) modulo the irreducible h over F_p.
inline FpPoly fp_inverse_mod(FpPoly a, const FpPoly& h, u64 p) {
  fp_trim(a);
  FpPoly r0 = h, r1 = a, s0 = {}, s1 = {1};
  while (!r1.empty()) {
    // q = r0 / r1
    FpPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    FpPoly rem = r0;
    const u64 inv_lead = invmod(r1.back(), p);
    while (rem.size() >= r1.size()) {
      const u64 c = mulmod(rem.back(), inv_lead, p);
      const std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i)
        rem[shift + i] = (rem[shift + i] + p - mulmod(c, r1[i], p)) % p;
      fp_trim(rem);
    }
    // s2 = s0 - q s1
    FpPoly qs(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] = (qs[i + j] + mulmod(q[i], s1[j], p)) % p;
    FpPoly s2(std::max(s0.size(), qs.size()), 0);
    for (std::size_t i = 0; i < s2.size(); ++i) {
      const u64 x = i < s0.size() ? s0[i] : 0;
      const u64 y = i < qs.size() ? qs[i] : 0;
      s2[i] = (x + p - y) % p;
    }
    fp_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant
  const u64 c = invmod(r0[0], p);
  for (auto& x : s0) x = mulmod(x, c, p);
  return s0;
}

}  // namespace detail

class RingCtx;
using CtxPtr = std::shared_ptr<const RingCtx>;

/**
 * Parameters of (Z/p^M)[x]/(h) plus the raw element kernels.
 *
 * Elements handed to the kernels are arrays of exactly degree() residues.
 */
class RingCtx : public std::enable_shared_from_this<RingCtx> {
 public:
  RingCtx(u64 p, int precision, std::vector<u64> modpoly) : RingCtx(p, precision, std::move(modpoly), true) {}

  /// Context with the deterministic choice of h (smallest irreducible of degree d).
  static CtxPtr create(u64 p, int precision, int degree = 1) {
    if (degree < 1) throw ContractViolation("extension degree must be >= 1");
    if (!detail::is_prime(p)) throw ContractViolation("p must be prime, got " + std::to_string(p));
    return std::make_shared<const RingCtx>(p, precision, detail::smallest_irreducible(p, degree));
  }
  static CtxPtr create(u64 p, int precision, std::vector<u64> modpoly) {
    return std::make_shared<const RingCtx>(p, precision, std::move(modpoly));
  }

  /// Same p and h at another precision; derived contexts are cached weakly.
  CtxPtr with_precision(int precision) const {
    if (precision == M_) return shared_from_this();
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto& slot = cache_[precision];
    if (auto hit = slot.lock()) return hit;
    CtxPtr made(new RingCtx(p_, precision, h_, false));
    slot = made;
    return made;
  }
  CtxPtr residue() const { return with_precision(1); }

  u64 prime() const { return p_; }
  int precision() const { return M_; }
  int degree() const { return d_; }
  u64 modulus() const { return m_; }
  u64 pow_p(int k) const { return pow_.at(k); }
  const std::vector<u64>& modpoly() const { return h_; }

  /// Number of elements of the residue field.
  u64 residue_size() const {
    u64 q = 1;
    for (int i = 0; i < d_; ++i) {
      if (q > (u64{1} << 62) / p_) throw ContractViolation("residue field too large");
      q *= p_;
    }
    return q;
  }

  bool same_as(const RingCtx& o) const { return this == &o || (p_ == o.p_ && M_ == o.M_ && h_ == o.h_); }

  // -- scalar residues ------------------------------------------------------
  u64 add_mod(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  u64 sub_mod(u64 a, u64 b) const { return a >= b ? a - b : a + m_ - b; }
  u64 mul_mod(u64 a, u64 b) const { return detail::mulmod(a, b, m_); }
  u64 from_int(long long v) const {
    long long r = v % static_cast<long long>(m_);
    if (r < 0) r += static_cast<long long>(m_);
    return static_cast<u64>(r);
  }

  // -- element kernels ------------------------------------------------------
  void zero(u64* r) const { std::fill(r, r + d_, 0); }
  void one(u64* r) const {
    zero(r);
    r[0] = 1 % m_;
  }
  void add(const u64* a, const u64* b, u64* r) const {
    for (int i = 0; i < d_; ++i) r[i] = add_mod(a[i], b[i]);
  }
  void sub(const u64* a, const u64* b, u64* r) const {
    for (int i = 0; i < d_; ++i) r[i] = sub_mod(a[i], b[i]);
  }
  void neg(const u64* a, u64* r) const {
    for (int i = 0; i < d_; ++i) r[i] = a[i] == 0 ? 0 : m_ - a[i];
  }
  void scale(const u64* a, u64 s, u64* r) const {
    for (int i = 0; i < d_; ++i) r[i] = mul_mod(a[i], s);
  }
  bool is_zero(const u64* a) const {
    for (int i = 0; i < d_; ++i)
      if (a[i]) return false;
    return true;
  }
  bool equal(const u64* a, const u64* b) const { return std::equal(a, a + d_, b); }

  void mul(const u64* a, const u64* b, u64* r) const {
    if (d_ == 1) {
      r[0] = mul_mod(a[0], b[0]);
      return;
    }
    std::vector<u64> acc(2 * d_ - 1, 0);
    for (int i = 0; i < d_; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < d_; ++j) acc[i + j] = add_mod(acc[i + j], mul_mod(a[i], b[j]));
    }
    reduce_wide(acc.data(), r);
  }

  /// Reduces a length 2d-1 product (coefficients already < p^M) modulo h.
  void reduce_wide(u64* acc, u64* r) const {
    for (int k = 2 * d_ - 2; k >= d_; --k) {
      const u64 c = acc[k];
      if (!c) continue;
      for (int j = 0; j < d_; ++j) acc[k - d_ + j] = sub_mod(acc[k - d_ + j], mul_mod(c, h_[j]));
    }
    std::copy(acc, acc + d_, r);
  }

  int valuation_of(u64 c) const {
    if (c == 0) return M_;
    int v = 0;
    while (c % p_ == 0) {
      c /= p_;
      ++v;
    }
    return v;
  }
  int valuation(const u64* a) const {
    int v = M_;
    for (int i = 0; i < d_; ++i) v = std::min(v, valuation_of(a[i]));
    return v;
  }
  bool is_unit(const u64* a) const {
    for (int i = 0; i < d_; ++i)
      if (a[i] % p_) return true;
    return false;
  }

  /// r = a^{-1}; throws DivisionPrecisionError when a is not a unit.
  void inverse(const u64* a, u64* r) const {
    if (!is_unit(a)) throw DivisionPrecisionError("inverse of a non-unit");
    if (d_ == 1) {
      r[0] = detail::invmod(a[0], m_);
      return;
    }
    detail::FpPoly abar(d_);
    for (int i = 0; i < d_; ++i) abar[i] = a[i] % p_;
    detail::FpPoly inv = detail::fp_inverse_mod(abar, hbar_, p_);
    std::vector<u64> y(d_, 0), t(d_), two(d_, 0);
    for (std::size_t i = 0; i < inv.size(); ++i) y[i] = inv[i];
    two[0] = 2 % m_;
    // y <- y (2 - a y), doubling the number of correct digits
    for (int digits = 1; digits < M_; digits *= 2) {
      mul(a, y.data(), t.data());
      sub(two.data(), t.data(), t.data());
      mul(y.data(), t.data(), y.data());
    }
    std::copy(y.begin(), y.end(), r);
  }

 private:
  RingCtx(u64 p, int precision, std::vector<u64> modpoly, bool validate) : p_(p), M_(precision), h_(std::move(modpoly)) {
    if (validate && !detail::is_prime(p_)) throw ContractViolation("p must be prime, got " + std::to_string(p_));
    if (M_ < 1) throw ContractViolation("precision must be >= 1");
    if (h_.size() < 2 || h_.back() != 1) throw ContractViolation("modulus polynomial must be monic of degree >= 1");
    d_ = static_cast<int>(h_.size()) - 1;
    pow_.assign(M_ + 1, 1);
    for (int i = 1; i <= M_; ++i) {
      if (pow_[i - 1] > (u64{1} << 62) / p_) throw ContractViolation("p^M must stay below 2^62");
      pow_[i] = pow_[i - 1] * p_;
    }
    m_ = pow_[M_];
    hbar_.resize(h_.size());
    for (std::size_t i = 0; i < h_.size(); ++i) {
      hbar_[i] = h_[i] % p_;
      h_[i] %= m_;
    }
    if (validate && !detail::fp_irreducible(hbar_, p_)) throw ContractViolation("modulus polynomial is reducible mod p");
  }

  u64 p_;
  int M_;
  int d_ = 1;
  u64 m_ = 1;
  std::vector<u64> pow_;
  std::vector<u64> h_;
  detail::FpPoly hbar_;
  mutable std::mutex cache_mutex_;
  mutable std::map<int, std::weak_ptr<const RingCtx>> cache_;
};

inline void check_same(const CtxPtr& a, const CtxPtr& b) {
  if (a.get() != b.get() && !a->same_as(*b)) throw ContractViolation("ring context mismatch");
}

/// Value-semantic element of a RingCtx.
class RingElem {
 public:
  RingElem() = default;
  explicit RingElem(CtxPtr ctx) : ctx_(std::move(ctx)), c_(ctx_->degree(), 0) {}
  RingElem(CtxPtr ctx, long long v) : RingElem(std::move(ctx)) { c_[0] = ctx_->from_int(v); }
  RingElem(CtxPtr ctx, std::vector<u64> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != ctx_->degree()) throw ContractViolation("element needs degree() coefficients");
    for (auto& x : c_) x %= ctx_->modulus();
  }
  RingElem(CtxPtr ctx, std::span<const u64> coeffs) : RingElem(std::move(ctx), std::vector<u64>(coeffs.begin(), coeffs.end())) {}

  static RingElem one(CtxPtr ctx) { return RingElem(std::move(ctx), 1); }

  const CtxPtr& ctx() const { return ctx_; }
  std::span<const u64> coeffs() const { return c_; }
  u64* data() { return c_.data(); }
  const u64* data() const { return c_.data(); }
  u64 operator[](int i) const { return c_[i]; }

  bool is_zero() const { return ctx_->is_zero(c_.data()); }
  bool is_unit() const { return ctx_->is_unit(c_.data()); }
  int valuation() const { return ctx_->valuation(c_.data()); }

  RingElem inverse() const {
    RingElem r(ctx_);
    ctx_->inverse(c_.data(), r.c_.data());
    return r;
  }

  RingElem operator-() const {
    RingElem r(ctx_);
    ctx_->neg(c_.data(), r.c_.data());
    return r;
  }
  RingElem& operator+=(const RingElem& o) {
    check_same(ctx_, o.ctx_);
    ctx_->add(c_.data(), o.c_.data(), c_.data());
    return *this;
  }
  RingElem& operator-=(const RingElem& o) {
    check_same(ctx_, o.ctx_);
    ctx_->sub(c_.data(), o.c_.data(), c_.data());
    return *this;
  }
  RingElem& operator*=(const RingElem& o) {
    check_same(ctx_, o.ctx_);
    ctx_->mul(c_.data(), o.c_.data(), c_.data());
    return *this;
  }
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(RingElem a, const RingElem& b) { return a *= b; }
  friend bool operator==(const RingElem& a, const RingElem& b) {
    return (a.ctx_.get() == b.ctx_.get() || a.ctx_->same_as(*b.ctx_)) && a.c_ == b.c_;
  }

  RingElem pow(u64 e) const {
    RingElem r = one(ctx_), base = *this;
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const RingElem& x) { return os << x.to_string(); }

  std::string to_string() const {
    if (c_.size() == 1) return std::to_string(c_[0]);
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
    return s + "]";
  }

 private:
  CtxPtr ctx_;
  std::vector<u64> c_;
};

// -- division rules of the fixed point model --------------------------------

namespace detail {

/// Divides every coefficient of x by p^v; throws when some coefficient is not divisible.
inline std::vector<u64> shift_down(const RingElem& x, int v, const char* what) {
  const auto& ctx = *x.ctx();
  std::vector<u64> out(x.coeffs().begin(), x.coeffs().end());
  if (v == 0) return out;
  if (v >= ctx.precision()) {
    if (!x.is_zero()) throw DivisionPrecisionError(what);
    return out;
  }
  const u64 pv = ctx.pow_p(v);
  for (auto& c : out) {
    if (c % pv) throw DivisionPrecisionError(what);
    c /= pv;
  }
  return out;
}

}  // namespace detail

/// x / y in the fixed point model: the quotient is known modulo p^{M-v(y)}
/// and its high digits are zero-filled.
inline RingElem div(const RingElem& x, const RingElem& y) {
  check_same(x.ctx(), y.ctx());
  const CtxPtr& ctx = x.ctx();
  if (x.is_zero()) return RingElem(ctx);
  const int v = y.valuation();
  if (v > x.valuation()) throw DivisionPrecisionError("div: valuation of divisor exceeds valuation of dividend");
  if (v == 0) return x * y.inverse();
  CtxPtr low = ctx->with_precision(ctx->precision() - v);
  RingElem xs(low, detail::shift_down(x, v, "div"));
  RingElem ys(low, detail::shift_down(y, v, "div"));
  RingElem q = xs * ys.inverse();
  return RingElem(ctx, q.coeffs());
}

/// x / i for a positive integer i = p^v u, consuming v digits.
inline RingElem int_div(const RingElem& x, u64 i) {
  if (i == 0) throw ContractViolation("int_div by zero");
  const CtxPtr& ctx = x.ctx();
  const u64 p = ctx->prime();
  int v = 0;
  while (i % p == 0) {
    i /= p;
    ++v;
  }
  std::vector<u64> shifted = detail::shift_down(x, v, "int_div: integer divisor exceeds available digits");
  if (v >= ctx->precision()) return RingElem(ctx);
  const u64 mod = ctx->pow_p(ctx->precision() - v);
  const u64 uinv = detail::invmod(i % mod, mod);
  for (auto& c : shifted) c = detail::mulmod(c, uinv, mod);
  return RingElem(ctx, std::move(shifted));
}

/// Coefficientwise reduction modulo p, landing in the residue field context.
inline RingElem reduce_residue(const RingElem& x) {
  CtxPtr res = x.ctx()->residue();
  std::vector<u64> c(x.coeffs().begin(), x.coeffs().end());
  for (auto& v : c) v %= x.ctx()->prime();
  return RingElem(res, std::move(c));
}

/// Embeds x into another precision of the same extension (zero-filling new digits, truncating old ones).
inline RingElem change_precision(const RingElem& x, const CtxPtr& target) {
  if (target->prime() != x.ctx()->prime() || target->degree() != x.ctx()->degree())
    throw ContractViolation("change_precision: incompatible contexts");
  std::vector<u64> c(x.coeffs().begin(), x.coeffs().end());
  for (auto& v : c) v %= target->modulus();
  return RingElem(target, std::move(c));
}

/// Square root at full precision by Newton iteration from a residue y0.
inline RingElem hensel_sqrt(const RingElem& a, const RingElem& y0) {
  check_same(a.ctx(), y0.ctx());
  const CtxPtr& ctx = a.ctx();
  if (ctx->prime() == 2) throw ContractViolation("hensel_sqrt needs odd p");
  if (!y0.is_unit()) throw NotASquare("hensel_sqrt: start value is not a unit");
  if (!(reduce_residue(y0 * y0) == reduce_residue(a))) throw NotASquare("hensel_sqrt: y0^2 != a mod p");
  const RingElem half = RingElem(ctx, 2).inverse();
  RingElem y = y0;
  for (int digits = 1; digits < ctx->precision(); digits *= 2) y = (y + a * y.inverse()) * half;
  return y;
}

/// Evaluates the polynomial with coefficients coeffs (low degree first) at x.
inline RingElem horner(std::span<const RingElem> coeffs, const RingElem& x) {
  RingElem acc(x.ctx());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Simple root of F lifted from x0 to full precision.
inline RingElem hensel_root(std::span<const RingElem> F, const RingElem& x0) {
  if (F.empty()) throw ContractViolation("hensel_root: zero polynomial");
  std::vector<RingElem> dF;
  for (std::size_t i = 1; i < F.size(); ++i) dF.push_back(F[i] * RingElem(x0.ctx(), static_cast<long long>(i)));
  if (!reduce_residue(horner(F, x0)).is_zero()) throw ContractViolation("hensel_root: x0 is not a root mod p");
  if (dF.empty() || !horner(dF, x0).is_unit()) throw SingularRoot("hensel_root: derivative vanishes mod p");
  RingElem x = x0;
  for (int digits = 1; digits < x0.ctx()->precision(); digits *= 2) x = x - horner(F, x) * horner(dF, x).inverse();
  return x;
}

// -- residue field helpers (M = 1) ------------------------------------------

/// Element whose coefficients are the base-p digits of k.
inline RingElem element_from_index(const CtxPtr& ctx, u64 k) {
  std::vector<u64> c(ctx->degree(), 0);
  for (int i = 0; i < ctx->degree(); ++i) {
    c[i] = k % ctx->prime();
    k /= ctx->prime();
  }
  return RingElem(ctx, std::move(c));
}

inline u64 element_index(const RingElem& x) {
  u64 k = 0;
  for (int i = x.ctx()->degree() - 1; i >= 0; --i) k = k * x.ctx()->prime() + x[i] % x.ctx()->prime();
  return k;
}

/// Square root in the finite field F_q (ctx precision 1); nullopt for non-squares.
inline std::optional<RingElem> field_sqrt(const RingElem& a) {
  const CtxPtr& ctx = a.ctx();
  if (ctx->precision() != 1) throw ContractViolation("field_sqrt needs a residue field context");
  if (a.is_zero()) return a;
  const u64 q = ctx->residue_size();
  const RingElem one = RingElem::one(ctx);
  if (q % 2 == 0) return a.pow(q / 2);  // characteristic 2: Frobenius is bijective
  if (!(a.pow((q - 1) / 2) == one)) return std::nullopt;
  u64 Q = q - 1;
  int S = 0;
  while ((Q & 1) == 0) {
    Q >>= 1;
    ++S;
  }
  RingElem z(ctx);
  for (u64 k = 2;; ++k) {
    z = element_from_index(ctx, k);
    if (!(z.pow((q - 1) / 2) == one)) break;
  }
  RingElem c = z.pow(Q), t = a.pow(Q), r = a.pow((Q + 1) / 2);
  int m = S;
  while (!(t == one)) {
    int i = 0;
    RingElem tt = t;
    while (!(tt == one)) {
      tt *= tt;
      ++i;
    }
    RingElem b = c;
    for (int j = 0; j < m - i - 1; ++j) b *= b;
    m = i;
    c = b * b;
    t *= c;
    r *= b;
  }
  return r;
}

inline bool field_is_square(const RingElem& a) {
  if (a.is_zero()) return true;
  const u64 q = a.ctx()->residue_size();
  return a.pow((q - 1) / 2) == RingElem::one(a.ctx());
}

}  // namespace hyperdiv
