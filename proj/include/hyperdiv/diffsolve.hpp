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
 * @file diffsolve.hpp
 * @brief Newton solver for H_f(X) X' = G with X(0) = 0.
 *
 * Entry (i, j) of H_f(X) is f_ij evaluated at the j-th unknown x_j. With this
 * convention d/dt (H_f(X) h) = H_f(X) h' + dH_f(X)(h) X', which is the
 * identity the Newton step integrates; the alternant matrix x_j^{i-1}/y_j
 * has the same shape.
 */

#pragma once

#include <vector>

#include "series.hpp"

namespace hyperdiv {

using SeriesMatrix = std::vector<std::vector<Series>>;

struct DiffSystemSpec {
  std::size_t g = 0;
  SeriesMatrix f;         // g x g; f[i][j] is a series in one variable
  std::vector<Series> G;  // length g
  std::size_t n = 0;      // solve modulo t^{n+1}
  int N = 1;              // wanted p-adic digits
};

struct DiffSolveResult {
  std::vector<Series> X;  // modulo t^{n+1}
  SeriesMatrix Hinv;      // H_f(X)^{-1}, at least ceil(n/2) terms
};

/// floor(log_p n), with 0 for n < p (including n = 0).
inline int floor_log(u64 p, u64 n) {
  int k = 0;
  for (u64 x = n; x >= p; x /= p) ++k;
  return k;
}

/// Working precision that guarantees N correct digits after solving to order n.
inline int required_precision(u64 p, int N, u64 n) {
  if (N < 1) throw ContractViolation("required_precision: N must be >= 1");
  const int base = p == 2 ? std::max(N, 3) : (p == 3 ? std::max(N, 2) : N);
  return base + floor_log(p, n);
}

/// f(x) modulo t^trunc for a series x with x(0) = 0.
inline Series compose(const Series& f, const Series& x, std::size_t trunc) {
  check_same(f.ctx(), x.ctx());
  if (x.trunc() > 0 && !x.coeff(0).is_zero()) throw ContractViolation("compose needs x(0) = 0");
  Series xs = x.trunc() >= trunc ? x.truncated(trunc) : x.padded(trunc);
  const std::size_t top = std::min(f.trunc(), trunc);  // x^k = O(t^k)
  Series acc(f.ctx(), trunc);
  for (std::size_t k = top; k-- > 0;) {
    acc = mul(acc, xs);
    acc.set(0, acc.coeff(0) + f.coeff(k));
  }
  return acc;
}

/// The matrix (f_ij(x_j)) modulo t^{n+1}.
inline SeriesMatrix apply_Hf(const SeriesMatrix& f, const std::vector<Series>& X, std::size_t n) {
  const std::size_t g = X.size();
  if (f.size() != g) throw ContractViolation("apply_Hf: dimension mismatch");
  SeriesMatrix H(g);
  for (std::size_t i = 0; i < g; ++i) {
    if (f[i].size() != g) throw ContractViolation("apply_Hf: dimension mismatch");
    for (std::size_t j = 0; j < g; ++j) H[i].push_back(compose(f[i][j], X[j], n + 1));
  }
  return H;
}

namespace detail {

inline SeriesMatrix mat_mul(const SeriesMatrix& A, const SeriesMatrix& B, std::size_t trunc) {
  const std::size_t g = A.size();
  SeriesMatrix C(g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      Series acc(A[0][0].ctx(), trunc);
      for (std::size_t k = 0; k < g; ++k) acc += mul(A[i][k], B[k][j], trunc);
      C[i].push_back(acc);
    }
  return C;
}

inline std::vector<Series> mat_vec(const SeriesMatrix& A, const std::vector<Series>& v, std::size_t trunc) {
  std::vector<Series> out;
  for (const auto& row : A) {
    Series acc(v[0].ctx(), trunc);
    for (std::size_t k = 0; k < v.size(); ++k) acc += mul(row[k], v[k], trunc);
    out.push_back(acc);
  }
  return out;
}

inline SeriesMatrix mat_pad(SeriesMatrix A, std::size_t trunc) {
  for (auto& row : A)
    for (auto& s : row) s = s.trunc() >= trunc ? s.truncated(trunc) : s.padded(trunc);
  return A;
}

/// Gauss-Jordan inverse of a constant matrix, choosing a unit pivot in each column.
inline std::vector<std::vector<RingElem>> gauss_jordan_inverse(std::vector<std::vector<RingElem>> A) {
  const std::size_t g = A.size();
  const CtxPtr& ctx = A[0][0].ctx();
  std::vector<std::vector<RingElem>> I(g, std::vector<RingElem>(g, RingElem(ctx)));
  for (std::size_t i = 0; i < g; ++i) I[i][i] = RingElem::one(ctx);
  for (std::size_t col = 0; col < g; ++col) {
    std::size_t piv = col;
    while (piv < g && !A[piv][col].is_unit()) ++piv;
    if (piv == g) throw SingularH("H_f(0) is not invertible modulo p");
    std::swap(A[piv], A[col]);
    std::swap(I[piv], I[col]);
    const RingElem inv = A[col][col].inverse();
    for (std::size_t j = 0; j < g; ++j) {
      A[col][j] *= inv;
      I[col][j] *= inv;
    }
    for (std::size_t r = 0; r < g; ++r) {
      if (r == col || A[r][col].is_zero()) continue;
      const RingElem c = A[r][col];
      for (std::size_t j = 0; j < g; ++j) {
        A[r][j] -= c * A[col][j];
        I[r][j] -= c * I[col][j];
      }
    }
  }
  return I;
}

inline DiffSolveResult diff_solve_rec(const DiffSystemSpec& s, std::size_t n) {
  const std::size_t g = s.g;
  const CtxPtr& ctx = s.G[0].ctx();
  if (n == 0) {
    std::vector<std::vector<RingElem>> H0(g);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) H0[i].push_back(s.f[i][j].coeff(0));
    auto inv = gauss_jordan_inverse(std::move(H0));
    DiffSolveResult r;
    r.X.assign(g, Series(ctx, 1));
    r.Hinv.resize(g);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) r.Hinv[i].push_back(Series::constant(inv[i][j], 1));
    return r;
  }
  const std::size_t m = n / 2;  // ceil((n-1)/2)
  DiffSolveResult prev = diff_solve_rec(s, m);
  std::vector<Series> Xm;
  for (const auto& x : prev.X) Xm.push_back(x.padded(n + 1));

  SeriesMatrix HX = apply_Hf(s.f, Xm, n - 1);  // H_f(X_m) mod t^n
  // H_n := 2 H_m - H_m H_f(X_m) H_m mod t^{m+1}
  SeriesMatrix Hm = mat_pad(prev.Hinv, m + 1);
  SeriesMatrix T = mat_mul(mat_mul(Hm, HX, m + 1), Hm, m + 1);
  SeriesMatrix Hn(g);
  const RingElem two(ctx, 2);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) Hn[i].push_back(Hm[i][j].scaled(two) - T[i][j]);

  std::vector<Series> dX;
  for (const auto& x : Xm) dX.push_back(derivative(x));  // trunc n
  std::vector<Series> R = mat_vec(HX, dX, n);
  std::vector<Series> F;
  for (std::size_t i = 0; i < g; ++i) F.push_back(integrate(s.G[i].truncated(n) - R[i]));  // trunc n+1
  // F vanishes modulo t^{m+1}, so H_n is only needed to t^{n-m}
  std::vector<Series> step = mat_vec(mat_pad(Hn, n + 1), F, n + 1);
  DiffSolveResult r;
  for (std::size_t i = 0; i < g; ++i) r.X.push_back(Xm[i] + step[i]);
  r.Hinv = std::move(Hn);
  return r;
}

}  // namespace detail

/// Solves H_f(X) X' = G modulo t^{n+1}. The context precision must be at least required_precision(p, N, n).
inline DiffSolveResult diff_solve(const DiffSystemSpec& s) {
  if (s.g == 0 || s.G.size() != s.g || s.f.size() != s.g) throw ContractViolation("diff_solve: dimension mismatch");
  const CtxPtr& ctx = s.G[0].ctx();
  for (const auto& row : s.f) {
    if (row.size() != s.g) throw ContractViolation("diff_solve: f must be square");
    for (const auto& e : row) {
      check_same(ctx, e.ctx());
      if (e.trunc() < std::max<std::size_t>(s.n, 1)) throw ContractViolation("diff_solve: f known to too few terms");
    }
  }
  for (const auto& e : s.G) {
    check_same(ctx, e.ctx());
    if (e.trunc() < s.n) throw ContractViolation("diff_solve: G known to too few terms");
  }
  if (ctx->precision() < required_precision(ctx->prime(), s.N, s.n))
    throw ContractViolation("diff_solve: ring precision below required_precision(p, N, n)");
  return detail::diff_solve_rec(s, s.n);
}

}  // namespace hyperdiv
