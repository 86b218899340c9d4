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

#include <optional>
#include <random>

#include "hyperdiv/reconstruct.hpp"

using namespace hyperdiv;

namespace {

Poly random_poly(const CtxPtr& c, std::size_t deg, std::mt19937_64& rng) {
  std::vector<RingElem> v;
  for (std::size_t i = 0; i <= deg; ++i) v.push_back(element_from_index(c, rng() % c->residue_size()));
  return Poly(c, v);
}

Series expand(const Poly& num, const Poly& den, std::size_t K) {
  return Series::from_poly(mul_trunc(num, inv_trunc(den, K), K), K);
}

void expect_multiply_back(const Series& S, const RationalFraction& r, std::size_t K) {
  EXPECT_EQ(mul_trunc(r.den, Poly::from_raw(S.ctx(), S.truncated(K).raw()), K), r.num.truncated(K));
}

}  // namespace

TEST(Pade, GeometricSeriesOverF5) {
  CtxPtr c = RingCtx::create(5, 1);
  auto r = pade(Series::from_ints(c, 5, {1, 1, 1, 1, 1}), 0, 1);
  EXPECT_EQ(r.num, Poly::from_ints(c, {4}));
  EXPECT_EQ(r.den, Poly::from_ints(c, {4, 1}));
}

TEST(Pade, TwoTOverOnePlusTSquared) {
  CtxPtr c = RingCtx::create(7, 1);
  auto r = pade(Series::from_ints(c, 5, {0, 2, 0, -2, 0}), 1, 2);
  EXPECT_EQ(r.num, Poly::from_ints(c, {0, 2}));
  EXPECT_EQ(r.den, Poly::from_ints(c, {1, 0, 1}));
}

TEST(Pade, Constant) {
  CtxPtr c = RingCtx::create(11, 1);
  auto r = pade(Series::from_ints(c, 1, {7}), 0, 0);
  EXPECT_EQ(r.num, Poly::from_ints(c, {7}));
  EXPECT_EQ(r.den, Poly::from_ints(c, {1}));
  auto z = pade(Series(c, 9), 4, 4);
  EXPECT_TRUE(z.num.is_zero());
  EXPECT_EQ(z.den, Poly::from_ints(c, {1}));
}

TEST(Pade, FailuresAndContracts) {
  CtxPtr c = RingCtx::create(5, 1);
  // t is not n/d with d(0) != 0 and deg n = 0
  EXPECT_THROW(pade(Series::from_ints(c, 2, {0, 1}), 0, 1), ReconstructionFailure);
  EXPECT_THROW(pade(Series::from_ints(c, 3, {1, 2}), 1, 2), ContractViolation);
  EXPECT_THROW(pade(Series::from_ints(RingCtx::create(5, 2), 3, {1, 2}), 1, 1), ContractViolation);
}

TEST(Pade, RoundTripRandomFractions) {
  std::mt19937_64 rng(11);
  for (int d : {1, 2}) {
    CtxPtr c = RingCtx::create(d == 1 ? 5 : 7, 1, d);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t dn = rng() % (trial < 50 ? 20 : 300), dd = rng() % (trial < 50 ? 20 : 300);
      Poly num = random_poly(c, dn, rng), den = random_poly(c, dd, rng);
      if (den.is_zero() || den.coeff(0).is_zero() || gcd(num, den).degree() > 0) continue;
      const RingElem li = den.lead().inverse();
      const std::size_t K = dn + dd + 1;
      auto r = pade(expand(num, den, K), dn, dd);
      EXPECT_EQ(r.num, num.scaled(li));
      EXPECT_EQ(r.den, den.scaled(li));
    }
  }
}

TEST(Pade, HalfGcdAgreesWithPlainEuclid) {
  std::mt19937_64 rng(12);
  CtxPtr c = RingCtx::create(3, 1, 2);
  int compared = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t dn = rng() % 120, dd = rng() % 120, K = dn + dd + 1;
    Series S = Series::from_poly(random_poly(c, K - 1, rng), K);
    std::optional<RationalFraction> fast, slow;
    try {
      fast = detail::pade_with_threshold(S, dn, dd, 1);
    } catch (const ReconstructionFailure&) {
    }
    try {
      slow = detail::pade_with_threshold(S, dn, dd, 1u << 20);
    } catch (const ReconstructionFailure&) {
    }
    ASSERT_EQ(fast.has_value(), slow.has_value());
    if (!fast) continue;
    ++compared;
    EXPECT_EQ(fast->num, slow->num);
    EXPECT_EQ(fast->den, slow->den);
    expect_multiply_back(S, *fast, K);
    EXPECT_LE(fast->num.degree(), static_cast<int>(dn));
    EXPECT_LE(fast->den.degree(), static_cast<int>(dd));
  }
  EXPECT_GT(compared, 40);
}

TEST(Pade, HalfGcdStraddlesTheMidpoint) {
  std::mt19937_64 rng(13);
  CtxPtr c = RingCtx::create(5, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    Poly a = random_poly(c, n, rng), b = random_poly(c, rng() % n, rng);
    if (a.degree() != static_cast<int>(n)) continue;
    const int m = (a.degree() + 1) / 2;
    auto M = detail::half_gcd(a, b, 4);
    auto [r0, r1] = detail::mat_apply(M, a, b);
    if (b.degree() >= m) EXPECT_GE(r0.degree(), m);
    EXPECT_LT(r1.degree(), m);
    // the same pair as the plain remainder sequence
    auto E = detail::euclid_until(a, b, m);
    EXPECT_EQ(detail::mat_apply(E, a, b), std::make_pair(r0, r1));
  }
}

TEST(DegreeBounds, Examples) {
  EXPECT_EQ(degree_bounds(2, 3), std::make_pair(std::size_t{18}, std::size_t{30}));
  EXPECT_EQ(degree_bounds(3, 5), std::make_pair(std::size_t{75}, std::size_t{117}));
  EXPECT_EQ(degree_bounds(3, 4), std::make_pair(std::size_t{48}, std::size_t{76}));
  EXPECT_THROW(degree_bounds(2, 2), ContractViolation);
}
