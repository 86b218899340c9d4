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
 * @file extension.hpp
 * @brief Embedding of a finite field F_q = F_p[a]/(h) into F_{q^k}.
 *
 * The image of a is a root of h in the larger field, found by equal-degree splitting.
 */

#pragma once

#include <random>

#include "poly.hpp"

namespace hyperdiv {

class FieldEmbedding {
 public:
  /// Embeds the residue field `from` (precision 1) into its degree-k extension.
  FieldEmbedding(CtxPtr from, int k, u64 seed = 0) : from_(std::move(from)) {
    if (from_->precision() != 1) throw ContractViolation("field embedding needs residue field contexts");
    if (k < 1) throw ContractViolation("extension degree must be >= 1");
    to_ = RingCtx::create(from_->prime(), 1, from_->degree() * k);
    if (from_->degree() > 1) root_ = find_root(seed);
  }

  const CtxPtr& source() const { return from_; }
  const CtxPtr& target() const { return to_; }

  RingElem operator()(const RingElem& x) const {
    check_same(from_, x.ctx());
    if (from_->degree() == 1) return RingElem(to_, static_cast<long long>(x[0]));
    RingElem acc(to_);
    for (int i = from_->degree() - 1; i >= 0; --i) acc = acc * root_ + RingElem(to_, static_cast<long long>(x[i]));
    return acc;
  }

  Poly operator()(const Poly& P) const {
    std::vector<RingElem> c;
    for (std::size_t i = 0; i < P.size(); ++i) c.push_back((*this)(P.coeff(i)));
    return Poly(to_, c);
  }

 private:
  static Poly powmod(Poly b, u64 e, const Poly& m) {
    Poly r = Poly::from_ints(m.ctx(), {1});
    b = rem(b, m);
    while (e) {
      if (e & 1) r = rem(r * b, m);
      b = rem(b * b, m);
      e >>= 1;
    }
    return r;
  }

  RingElem find_root(u64 seed) const {
    std::vector<long long> hc(from_->modpoly().begin(), from_->modpoly().end());
    Poly h = Poly::from_ints(to_, hc);
    const u64 Q = to_->residue_size();
    std::mt19937_64 rng(seed);
    // h splits into distinct linear factors over the extension since deg h divides its degree
    while (h.degree() > 1) {
      Poly z_plus_a = Poly::linear(element_from_index(to_, rng() % Q));
      Poly s = powmod(z_plus_a, (Q - 1) / 2, h) - Poly::from_ints(to_, {1});
      Poly d = gcd(h, s);
      if (d.degree() >= 1 && d.degree() < h.degree()) h = 2 * d.degree() <= h.degree() ? d : divrem(h, d).first;
    }
    return -make_monic(h).coeff(0);
  }

  CtxPtr from_, to_;
  RingElem root_;
};

}  // namespace hyperdiv
