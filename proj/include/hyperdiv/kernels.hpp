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

// Dense convolution kernels over (Z/p^M)[x]/(h).
//
// Integer convolutions go through up to three NTT primes and a Garner
// recombination; the number of primes is picked from the coefficient bound.
// Extension elements are Kronecker-packed with stride 2d-1 so a single
// integer convolution handles the whole product.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ring.hpp"

namespace hyperdiv::detail {

using u32 = std::uint32_t;

template <u32 MOD, u32 ROOT>
struct NttPrime {
  static_assert(MOD < (1u << 31));
  static constexpr u32 mod = MOD;

  static u32 pw(u64 a, u64 e) {
    u64 r = 1;
    a %= MOD;
    while (e) {
      if (e & 1) r = r * a % MOD;
      a = a * a % MOD;
      e >>= 1;
    }
    return static_cast<u32>(r);
  }

  // Montgomery arithmetic with R = 2^32: redc(x) = x / R mod MOD for x < MOD R.
  static constexpr u32 neg_inv() {
    u32 inv = MOD;
    for (int i = 0; i < 5; ++i) inv *= 2 - MOD * inv;
    return static_cast<u32>(0) - inv;
  }
  static constexpr u32 kNegInv = neg_inv();
  static u32 redc(u64 x) {
    const u32 m = static_cast<u32>(x) * kNegInv;
    const u32 t = static_cast<u32>((x + static_cast<u64>(m) * MOD) >> 32);
    return std::min(t, t - MOD);  // t < 2 MOD; the wrapped difference is larger when t < MOD
  }
  static u32 to_mont(u64 a) { return static_cast<u32>((a % MOD << 32) % MOD); }

  /// Twiddles in Montgomery form: entries [h, 2h) hold w_{2h}^k for k < h.
  static const std::vector<u32>& roots(std::size_t n) {
    thread_local std::vector<u32> rt{0, to_mont(1)};
    while (rt.size() < n) {
      const std::size_t h = rt.size();
      rt.resize(2 * h);
      const u32 w = to_mont(pw(ROOT, (MOD - 1) / (2 * h)));
      for (std::size_t k = h; k < 2 * h; ++k) rt[k] = (k & 1) ? redc(static_cast<u64>(rt[k / 2]) * w) : rt[k / 2];
    }
    return rt;
  }

  /// In-place cyclic transform of length n = a.size() (a power of two); values stay in normal form.
  static void transform(std::vector<u32>& a, bool invert) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    const std::vector<u32>& rt = roots(n);
    for (std::size_t h = 1; h < n; h <<= 1) {
      for (std::size_t i = 0; i < n; i += 2 * h) {
        u32* x = a.data() + i;
        u32* y = x + h;
        const u32* w = rt.data() + h;
        for (std::size_t k = 0; k < h; ++k) {
          const u32 u = x[k];
          const u32 v = redc(static_cast<u64>(y[k]) * w[k]);
          // branchless: MOD < 2^31, so the wrapped candidate loses the min
          x[k] = std::min(u + v, u + v - MOD);
          y[k] = std::min(u - v + MOD, u - v);
        }
      }
    }
    if (invert) {
      std::reverse(a.begin() + 1, a.end());
      const u32 ninv = to_mont(pw(n, MOD - 2));
      for (auto& x : a) x = redc(static_cast<u64>(x) * ninv);
    }
  }

  /// Cyclic-free product of a and b, first nout terms.
  static std::vector<u32> multiply(const std::vector<u64>& a, const std::vector<u64>& b, std::size_t nout) {
    std::size_t sz = 1;
    while (sz < std::min(a.size() + b.size() - 1, nout + std::min(a.size(), b.size()))) sz <<= 1;
    sz = std::max<std::size_t>(sz, 2);
    while (sz < nout) sz <<= 1;
    std::vector<u32> fa(sz, 0), fb(sz, 0);
    for (std::size_t i = 0; i < a.size() && i < sz; ++i) fa[i] = static_cast<u32>(a[i] % MOD);
    for (std::size_t i = 0; i < b.size() && i < sz; ++i) fb[i] = static_cast<u32>(b[i] % MOD);
    // wrap-around only touches indices >= sz, which is at least nout
    transform(fa, false);
    transform(fb, false);
    // the pointwise redc divides by R; one more factor R restores it
    const u32 r2 = to_mont(to_mont(1));
    for (std::size_t i = 0; i < sz; ++i) fa[i] = redc(static_cast<u64>(redc(static_cast<u64>(fa[i]) * fb[i])) * r2);
    transform(fa, true);
    fa.resize(nout);
    return fa;
  }
};

using NttP1 = NttPrime<998244353u, 3u>;
using NttP2 = NttPrime<469762049u, 3u>;
using NttP3 = NttPrime<167772161u, 3u>;

inline constexpr std::size_t kSchoolbookThreshold = 32;
inline constexpr std::size_t kMaxNttLength = std::size_t{1} << 23;

inline void conv_schoolbook(const u64* a, std::size_t na, const u64* b, std::size_t nb, u64 m, u64* out,
                            std::size_t nout) {
  const bool wide_ok = m <= (u64{1} << 32);
  for (std::size_t k = 0; k < nout; ++k) {
    const std::size_t lo = k >= nb ? k - nb + 1 : 0;
    const std::size_t hi = std::min(k, na - 1);
    if (wide_ok) {
      u128 acc = 0;
      for (std::size_t i = lo; i <= hi; ++i) acc += static_cast<u128>(a[i]) * b[k - i];
      out[k] = static_cast<u64>(acc % m);
    } else {
      u64 acc = 0;
      for (std::size_t i = lo; i <= hi; ++i) {
        acc += mulmod(a[i], b[k - i], m);
        if (acc >= m) acc -= m;
      }
      out[k] = acc;
    }
  }
}

inline void conv_karatsuba(const u64* a, const u64* b, std::size_t n, u64 m, u64* out) {
  // out has 2n-1 slots; a and b both have n coefficients
  if (n <= kSchoolbookThreshold) {
    conv_schoolbook(a, n, b, n, m, out, 2 * n - 1);
    return;
  }
  const std::size_t h = n / 2, hi = n - h;
  std::vector<u64> sa(hi), sb(hi), z0(2 * h - 1), z2(2 * hi - 1), z1(2 * hi - 1);
  for (std::size_t i = 0; i < hi; ++i) {
    sa[i] = (i < h ? a[i] : 0) + a[h + i];
    if (sa[i] >= m) sa[i] -= m;
    sb[i] = (i < h ? b[i] : 0) + b[h + i];
    if (sb[i] >= m) sb[i] -= m;
  }
  std::vector<u64> la(a, a + h), lb(b, b + h);
  std::vector<u64> ha(a + h, a + n), hb(b + h, b + n);
  if (h > 0) conv_karatsuba(la.data(), lb.data(), h, m, z0.data());
  conv_karatsuba(ha.data(), hb.data(), hi, m, z2.data());
  conv_karatsuba(sa.data(), sb.data(), hi, m, z1.data());
  std::fill(out, out + 2 * n - 1, 0);
  auto sub = [m](u64 x, u64 y) { return x >= y ? x - y : x + m - y; };
  for (std::size_t i = 0; i < z1.size(); ++i) {
    u64 v = z1[i];
    if (i < z0.size()) v = sub(v, z0[i]);
    v = sub(v, z2[i]);
    z1[i] = v;
  }
  auto acc = [&](std::size_t pos, u64 v) {
    out[pos] += v;
    if (out[pos] >= m) out[pos] -= m;
  };
  for (std::size_t i = 0; i < z0.size(); ++i) acc(i, z0[i]);
  for (std::size_t i = 0; i < z1.size(); ++i) acc(h + i, z1[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) acc(2 * h + i, z2[i]);
}

/// out[k] = sum_i a[i] b[k-i] mod m for k < nout; inputs must be reduced mod m.
inline void conv_mod(const u64* a, std::size_t na, const u64* b, std::size_t nb, u64 m, u64* out,
                     std::size_t nout) {
  if (nout == 0) return;
  if (na == 0 || nb == 0) {
    std::fill(out, out + nout, 0);
    return;
  }
  // terms beyond nout never contribute
  na = std::min(na, nout);
  nb = std::min(nb, nout);
  const std::size_t full = na + nb - 1;
  const std::size_t produced = std::min(full, nout);
  if (std::min(na, nb) <= kSchoolbookThreshold) {
    conv_schoolbook(a, na, b, nb, m, out, produced);
    std::fill(out + produced, out + nout, 0);
    return;
  }
  const long double bound =
      static_cast<long double>(m - 1) * static_cast<long double>(m - 1) * static_cast<long double>(std::min(na, nb));
  const long double p1 = NttP1::mod, p2 = NttP2::mod, p3 = NttP3::mod;
  std::size_t sz = 1;
  while (sz < full) sz <<= 1;
  if (sz <= kMaxNttLength && bound < p1 * p2 * p3 / 2) {
    std::vector<u64> va(a, a + na), vb(b, b + nb);
    const auto r1 = NttP1::multiply(va, vb, produced);
    if (bound < p1) {
      for (std::size_t k = 0; k < produced; ++k) out[k] = r1[k] % m;
    } else if (bound < p1 * p2) {
      const auto r2 = NttP2::multiply(va, vb, produced);
      const u64 inv_p1 = invmod(NttP1::mod, NttP2::mod);
      for (std::size_t k = 0; k < produced; ++k) {
        const u64 t = (static_cast<u64>(r2[k]) + NttP2::mod - r1[k] % NttP2::mod) % NttP2::mod * inv_p1 % NttP2::mod;
        const u64 x = r1[k] + static_cast<u64>(NttP1::mod) * t;
        out[k] = x % m;
      }
    } else {
      const auto r2 = NttP2::multiply(va, vb, produced);
      const auto r3 = NttP3::multiply(va, vb, produced);
      const u64 p1u = NttP1::mod, p2u = NttP2::mod, p3u = NttP3::mod;
      const u64 inv_p1_p2 = invmod(p1u % p2u, p2u);
      const u64 inv_p1p2_p3 = invmod((p1u % p3u) * (p2u % p3u) % p3u, p3u);
      const u128 p1p2 = static_cast<u128>(p1u) * p2u;
      for (std::size_t k = 0; k < produced; ++k) {
        const u64 x1 = r1[k];
        const u64 t1 = (r2[k] + p2u - x1 % p2u) % p2u * inv_p1_p2 % p2u;
        const u64 x12 = x1 + p1u * t1;  // < p1 p2 < 2^64
        const u64 t2 = (r3[k] + p3u - x12 % p3u) % p3u * inv_p1p2_p3 % p3u;
        const u128 x = static_cast<u128>(x12) + p1p2 * t2;
        out[k] = static_cast<u64>(x % m);
      }
    }
    std::fill(out + produced, out + nout, 0);
    return;
  }
  const std::size_t n = std::max(na, nb);
  std::vector<u64> pa(a, a + na), pb(b, b + nb), res(2 * n - 1);
  pa.resize(n, 0);
  pb.resize(n, 0);
  conv_karatsuba(pa.data(), pb.data(), n, m, res.data());
  std::copy(res.begin(), res.begin() + produced, out);
  std::fill(out + produced, out + nout, 0);
}

/// Product of element arrays a (na elements) and b (nb elements), first nout elements.
inline void convolve(const RingCtx& ctx, const u64* a, std::size_t na, const u64* b, std::size_t nb, u64* out,
                     std::size_t nout) {
  const int d = ctx.degree();
  const u64 m = ctx.modulus();
  if (d == 1) {
    conv_mod(a, na, b, nb, m, out, nout);
    return;
  }
  na = std::min(na, nout);
  nb = std::min(nb, nout);
  const std::size_t stride = 2 * static_cast<std::size_t>(d) - 1;
  std::vector<u64> pa(na * stride, 0), pb(nb * stride, 0);
  for (std::size_t i = 0; i < na; ++i) std::copy(a + i * d, a + i * d + d, pa.begin() + i * stride);
  for (std::size_t i = 0; i < nb; ++i) std::copy(b + i * d, b + i * d + d, pb.begin() + i * stride);
  std::vector<u64> pc(nout * stride + stride, 0);
  conv_mod(pa.data(), pa.size(), pb.data(), pb.size(), m, pc.data(), nout * stride + d - 1);
  std::vector<u64> wide(stride);
  for (std::size_t k = 0; k < nout; ++k) {
    std::copy(pc.begin() + k * stride, pc.begin() + k * stride + stride, wide.begin());
    ctx.reduce_wide(wide.data(), out + k * d);
  }
}

}  // namespace hyperdiv::detail
