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

#include <gtest/gtest.h>

#include <random>

#include "hyperdiv/series.hpp"

using namespace hyperdiv;

namespace {

RingElem random_elem(const CtxPtr& c, std::mt19937_64& rng) {
  std::vector<u64> v(c->degree());
  for (auto& x : v) x = rng() % c->modulus();
  return RingElem(c, std::move(v));
}

Series random_series(const CtxPtr& c, std::size_t n, std::mt19937_64& rng) {
  Series s(c, n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, random_elem(c, rng));
  return s;
}

Poly random_poly(const CtxPtr& c, std::size_t n, std::mt19937_64& rng) {
  std::vector<RingElem> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_elem(c, rng));
  return Poly(c, v);
}

// quadratic oracle on RingElem values
Series naive_mul(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.trunc(), b.trunc());
  std::vector<RingElem> out(n, RingElem(a.ctx()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) out[i + j] += a.coeff(i) * b.coeff(j);
  return Series(a.ctx(), n, out);
}

Poly naive_poly_mul(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.ctx());
  std::vector<RingElem> out(a.size() + b.size() - 1, RingElem(a.ctx()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a.coeff(i) * b.coeff(j);
  return Poly(a.ctx(), out);
}

}  // namespace

TEST(Series, MulExamples) {
  auto c = RingCtx::create(5, 3);
  auto a = Series::from_ints(c, 3, {1, 1}), b = Series::from_ints(c, 3, {1, -1});
  EXPECT_EQ(a * b, Series::from_ints(c, 3, {1, 0, -1}));
  auto s = Series::from_ints(c, 2, {1, 1});
  EXPECT_EQ(s * s, Series::from_ints(c, 2, {1, 2}));
  auto d = Series::from_ints(c, 5, {1, 2, 3, 4, 0});
  EXPECT_EQ((d * a).trunc(), 3u);
}

TEST(Series, MulMatchesSchoolbookAcrossKernels) {
  std::mt19937_64 rng(21);
  // moduli chosen to reach the one-, two-, three-prime and Karatsuba routes
  std::vector<CtxPtr> ctxs = {RingCtx::create(5, 2),  RingCtx::create(5, 9),       RingCtx::create(7, 16),
                              RingCtx::create(3, 38), RingCtx::create(5, 3, 2), RingCtx::create(7, 4, 3)};
  for (const auto& c : ctxs) {
    for (std::size_t n : {1u, 7u, 64u, 200u, 517u}) {
      auto a = random_series(c, n, rng), b = random_series(c, n + 3, rng);
      EXPECT_EQ(a * b, naive_mul(a, b)) << "p^M=" << c->modulus() << " d=" << c->degree() << " n=" << n;
    }
  }
}

TEST(Series, PolyProductMatchesSchoolbook) {
  std::mt19937_64 rng(22);
  for (const auto& c : {RingCtx::create(5, 6), RingCtx::create(3, 38), RingCtx::create(5, 2, 3)}) {
    for (std::size_t na : {1u, 40u, 300u})
      for (std::size_t nb : {1u, 33u, 129u}) {
        auto a = random_poly(c, na, rng), b = random_poly(c, nb, rng);
        EXPECT_EQ(a * b, naive_poly_mul(a, b));
        EXPECT_EQ(mul_trunc(a, b, 50), naive_poly_mul(a, b).truncated(50));
      }
  }
}

TEST(Series, IntegrateAndDerivative) {
  auto c = RingCtx::create(5, 3);
  EXPECT_EQ(integrate(Series::from_ints(c, 2, {1, 2})), Series::from_ints(c, 3, {0, 1, 1}));
  Series s(c, 5);
  s.set(4, RingElem(c, 50));
  Series want(c, 6);
  want.set(5, RingElem(c, 10));
  EXPECT_EQ(integrate(s), want);
  Series bad(c, 5);
  bad.set(4, RingElem(c, 3));
  EXPECT_THROW(integrate(bad), DivisionPrecisionError);

  EXPECT_EQ(derivative(Series::from_ints(c, 3, {0, 1, 1})), Series::from_ints(c, 2, {1, 2}));
  EXPECT_TRUE(derivative(Series::from_ints(c, 1, {4})).is_zero());
  Series t5(c, 6);
  t5.set(5, RingElem(c, 1));
  auto dt5 = derivative(t5);
  EXPECT_EQ(dt5.coeff(4)[0], 5u);
}

TEST(Series, Inverse) {
  auto c = RingCtx::create(5, 3);
  EXPECT_EQ(inv(Series::from_ints(c, 4, {1, -1})), Series::from_ints(c, 4, {1, 1, 1, 1}));
  EXPECT_EQ(inv(Series::from_ints(c, 3, {1})), Series::from_ints(c, 3, {1}));
  EXPECT_THROW(inv(Series::from_ints(c, 3, {5, 1})), NonUnitConstantTerm);
}

TEST(Series, Sqrt) {
  auto c = RingCtx::create(5, 2);
  EXPECT_EQ(sqrt(Series::from_ints(c, 3, {1, 1}), RingElem(c, 1)), Series::from_ints(c, 3, {1, 13, 3}));
  EXPECT_EQ(sqrt(Series::from_ints(c, 3, {1}), RingElem(c, 1)), Series::from_ints(c, 3, {1}));
  EXPECT_THROW(sqrt(Series::from_ints(c, 3, {4}), RingElem(c, 3)), NotASquare);
  EXPECT_EQ(sqrt(Series::from_ints(c, 3, {4}), RingElem(c, 23)), Series::from_ints(c, 3, {23}));
}

TEST(Series, EvalPoly) {
  auto c = RingCtx::create(7, 3);
  auto tp1 = Series::from_ints(c, 5, {1, 1});
  EXPECT_EQ(eval_poly(Poly::from_ints(c, {0, 0, 1}), tp1), Series::from_ints(c, 5, {1, 2, 1}));
  std::mt19937_64 rng(23);
  auto a = random_series(c, 6, rng);
  EXPECT_EQ(eval_poly(Poly::from_ints(c, {0, 1}), a), a);
}

TEST(SeriesProperty, EvalPolyShiftMatchesHorner) {
  std::mt19937_64 rng(24);
  for (const auto& c : {RingCtx::create(5, 4), RingCtx::create(3, 2, 2), RingCtx::create(7, 1)}) {
    for (std::size_t deg : {1u, 5u, 32u, 100u, 260u}) {
      Poly P = random_poly(c, deg + 1, rng);
      RingElem x0 = random_elem(c, rng);
      Series a(c, deg + 4);
      a.set(0, x0);
      a.set(1, RingElem::one(c));
      Series horner(c, a.trunc());
      for (std::size_t i = P.size(); i-- > 0;) {
        horner = naive_mul(horner, a);
        horner.set(0, horner.coeff(0) + P.coeff(i));
      }
      EXPECT_EQ(eval_poly(P, a), horner);
      if (deg > 40) continue;
      Series a2 = a;
      a2.set(2, RingElem(c, 1));
      Series h2(c, a2.trunc());
      for (std::size_t i = P.size(); i-- > 0;) {
        h2 = naive_mul(h2, a2);
        h2.set(0, h2.coeff(0) + P.coeff(i));
      }
      EXPECT_EQ(eval_poly(P, a2), h2);
    }
  }
}

TEST(SeriesProperty, DerivativeOfIntegral) {
  std::mt19937_64 rng(25);
  for (u64 p : {3ULL, 5ULL, 7ULL}) {
    auto c = RingCtx::create(p, 6);
    for (int it = 0; it < 30; ++it) {
      auto a = random_series(c, 1 + rng() % 40, rng);
      // make it integrable: scale coefficient i by i+1
      Series b(c, a.trunc());
      for (std::size_t i = 0; i < a.trunc(); ++i) b.set(i, a.coeff(i) * RingElem(c, static_cast<long long>(i + 1)));
      EXPECT_EQ(derivative(integrate(b)), b);
      // integrate(derivative(a)) recovers a - a(0) on the digits that survive division by i
      Series back = integrate(derivative(a));
      EXPECT_TRUE(back.coeff(0).is_zero());
      for (std::size_t i = 1; i < a.trunc(); ++i) {
        int v = 0;
        for (std::size_t k = i; k % p == 0; k /= p) ++v;
        const u64 mod = c->pow_p(c->precision() - v);
        EXPECT_EQ(back.coeff(i)[0] % mod, a.coeff(i)[0] % mod);
      }
    }
  }
}

TEST(SeriesProperty, IntegrateLosesBoundedDigits) {
  // integrating a series known at M digits agrees with the exact rational integral
  // at M - floor(log_p trunc) digits
  std::mt19937_64 rng(26);
  const u64 p = 3;
  const int M = 7;
  auto hi = RingCtx::create(p, M + 6), lo = RingCtx::create(p, M);
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = 30;
    Series exact_int(hi, n + 1);
    Series a_hi(hi, n);
    for (std::size_t i = 0; i < n; ++i) {
      RingElem c = random_elem(hi, rng) * RingElem(hi, static_cast<long long>(i + 1));
      a_hi.set(i, c);
    }
    exact_int = integrate(a_hi);
    Series a_lo(lo, n);
    for (std::size_t i = 0; i < n; ++i) a_lo.set(i, change_precision(a_hi.coeff(i), lo));
    Series got = integrate(a_lo);
    int loss = 0;
    for (std::size_t k = n; k >= p; k /= p) ++loss;
    const u64 mod = lo->pow_p(M - loss);
    for (std::size_t i = 0; i <= n; ++i) EXPECT_EQ(got.coeff(i)[0] % mod, exact_int.coeff(i)[0] % mod);
  }
}

TEST(SeriesProperty, MulRingLaws) {
  std::mt19937_64 rng(27);
  auto c = RingCtx::create(5, 5, 2);
  for (int it = 0; it < 20; ++it) {
    auto a = random_series(c, 70, rng), b = random_series(c, 70, rng), d = random_series(c, 70, rng);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * d, a * (b * d));
    EXPECT_EQ(a * (b + d), a * b + a * d);
  }
}

TEST(SeriesProperty, InverseAndSqrtRoundTrip) {
  std::mt19937_64 rng(28);
  for (u64 p : {3ULL, 5ULL, 7ULL}) {
    for (int d : {1, 2}) {
      auto c = RingCtx::create(p, 5, d);
      int done = 0;
      while (done < 17) {
        auto a = random_series(c, 1 + rng() % 64, rng);
        if (!a.coeff(0).is_unit()) continue;
        auto one = Series::from_ints(c, a.trunc(), {1});
        EXPECT_EQ(a * inv(a), one);
        auto r = field_sqrt(reduce_residue(a.coeff(0)));
        if (!r) continue;
        RingElem y0 = hensel_sqrt(a.coeff(0), RingElem(c, r->coeffs()));
        auto s = sqrt(a, y0);
        EXPECT_EQ(s * s, a);
        EXPECT_EQ(s.coeff(0), y0);
        ++done;
      }
    }
  }
}

TEST(Poly, DivRemAndGcd) {
  std::mt19937_64 rng(29);
  for (const auto& c : {RingCtx::create(7, 1), RingCtx::create(5, 4), RingCtx::create(3, 3, 2)}) {
    for (std::size_t na : {1u, 10u, 150u, 400u})
      for (std::size_t nb : {1u, 3u, 70u, 200u}) {
        Poly a = random_poly(c, na, rng), b = random_poly(c, nb, rng);
        if (b.is_zero()) continue;
        if (!b.lead().is_unit()) {
          EXPECT_THROW(divrem(a, b), NonUnitPivot);
          continue;
        }
        auto [q, r] = divrem(a, b);
        EXPECT_EQ(q * b + r, a);
        EXPECT_LT(r.degree(), b.degree());
      }
  }
  auto k = RingCtx::create(7, 1);
  Poly a = Poly::from_ints(k, {-1, 0, 1}), b = Poly::from_ints(k, {1, 1});
  EXPECT_EQ(gcd(a, b), b);
  auto x = xgcd(Poly::from_ints(k, {1, 0, 1}), Poly::from_ints(k, {2, 1}));
  EXPECT_EQ(x.g, Poly::from_ints(k, {1}));
  EXPECT_EQ(x.s * Poly::from_ints(k, {1, 0, 1}) + x.t * Poly::from_ints(k, {2, 1}), x.g);
}

TEST(Poly, InverseTruncAndReverse) {
  auto c = RingCtx::create(5, 3);
  Poly a = Poly::from_ints(c, {1, -1});
  EXPECT_EQ(inv_trunc(a, 4), Poly::from_ints(c, {1, 1, 1, 1}));
  EXPECT_EQ(Poly::from_ints(c, {1, 2}).reversed(3), Poly::from_ints(c, {0, 2, 1}));
  EXPECT_THROW(inv_trunc(Poly::from_ints(c, {5, 1}), 3), NonUnitConstantTerm);
}
