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
 * @file json_io.hpp
 * @brief JSON form of a set of division polynomials:
 * {"p", "d", "f", "ell", "g", "d_polys", "e_polys"} with ascending coefficient lists.
 *
 * Over F_p a coefficient is an integer in [0, p). Over F_{p^d}, d > 1, it is the list of its d
 * coordinates on 1, a, ..., a^{d-1}, where a is a root of the smallest irreducible h of degree d
 * (the default choice of RingCtx::create).
 */

#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "pipeline.hpp"

namespace hyperdiv {

using Json = nlohmann::ordered_json;

class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionPolysFile {
  CurveModel C;
  DivisionPolys dp;
};

namespace detail {

inline Json element_to_json(const RingElem& x) {
  if (x.ctx()->degree() == 1) return x[0];
  Json a = Json::array();
  for (int i = 0; i < x.ctx()->degree(); ++i) a.push_back(x[i]);
  return a;
}

inline Json poly_to_json(const Poly& P) {
  Json a = Json::array();
  for (std::size_t i = 0; i < P.size(); ++i) a.push_back(element_to_json(P.coeff(i)));
  return a;
}

inline u64 json_digit(const Json& v, u64 p, const std::string& where) {
  if (!v.is_number_unsigned() || v.get<u64>() >= p) throw SchemaError(where + ": expected an integer in [0, p)");
  return v.get<u64>();
}

inline RingElem element_from_json(const Json& v, const CtxPtr& ctx, const std::string& where) {
  const u64 p = ctx->prime();
  const int d = ctx->degree();
  if (d == 1) return RingElem(ctx, static_cast<long long>(json_digit(v, p, where)));
  if (!v.is_array() || static_cast<int>(v.size()) != d) throw SchemaError(where + ": expected a list of " + std::to_string(d) + " integers");
  std::vector<u64> c;
  for (const auto& x : v) c.push_back(json_digit(x, p, where));
  return RingElem(ctx, std::move(c));
}

inline Poly poly_from_json(const Json& v, const CtxPtr& ctx, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected a coefficient list");
  std::vector<RingElem> c;
  for (std::size_t i = 0; i < v.size(); ++i) c.push_back(element_from_json(v[i], ctx, where + "[" + std::to_string(i) + "]"));
  return Poly(ctx, c);
}

inline std::vector<Poly> poly_list_from_json(const Json& v, const CtxPtr& ctx, std::size_t count, const std::string& key) {
  if (!v.is_array() || v.size() != count) throw SchemaError(key + ": expected " + std::to_string(count) + " polynomials");
  std::vector<Poly> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(poly_from_json(v[i], ctx, key + "[" + std::to_string(i) + "]"));
  return out;
}

inline const Json& require_key(const Json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

}  // namespace detail

inline Json to_json(const CurveModel& C, const DivisionPolys& dp) {
  const CtxPtr& ctx = C.f.ctx();
  Json j;
  j["p"] = ctx->prime();
  j["d"] = ctx->degree();
  j["f"] = detail::poly_to_json(C.f);
  j["ell"] = dp.ell;
  j["g"] = dp.g;
  Json d = Json::array(), e = Json::array();
  for (const auto& P : dp.d) d.push_back(detail::poly_to_json(P));
  for (const auto& P : dp.e) e.push_back(detail::poly_to_json(P));
  j["d_polys"] = d;
  j["e_polys"] = e;
  return j;
}

/// Parses and validates; every violation is a SchemaError naming the offending field.
inline DivisionPolysFile from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  auto integer = [&](const char* key) {
    const Json& v = detail::require_key(j, key);
    if (!v.is_number_unsigned()) throw SchemaError(std::string(key) + ": expected a non-negative integer");
    return v.get<u64>();
  };
  const u64 p = integer("p"), d = integer("d"), ell = integer("ell"), g = integer("g");
  if (p < 3 || p % 2 == 0 || !detail::is_prime(p)) throw SchemaError("p must be an odd prime");
  if (d < 1 || d > 16) throw SchemaError("d must be between 1 and 16");
  if (g < 1) throw SchemaError("g must be positive");
  CtxPtr ctx;
  try {
    ctx = RingCtx::create(p, 1, static_cast<int>(d));
    ctx->residue_size();
  } catch (const ContractViolation& e) {
    throw SchemaError(std::string("unsupported field: ") + e.what());
  }
  const Poly f = detail::poly_from_json(detail::require_key(j, "f"), ctx, "f");
  if (f.degree() != static_cast<int>(2 * g + 1)) throw SchemaError("f must have degree 2g+1");
  DivisionPolysFile out;
  try {
    out.C = make_curve(f);
  } catch (const ContractViolation& e) {
    throw SchemaError(std::string("f: ") + e.what());
  }
  out.dp.ell = ell;
  out.dp.g = g;
  out.dp.d = detail::poly_list_from_json(detail::require_key(j, "d_polys"), ctx, g + 1, "d_polys");
  out.dp.e = detail::poly_list_from_json(detail::require_key(j, "e_polys"), ctx, g + 1, "e_polys");
  if (out.dp.d[g].is_zero() || out.dp.e[g].is_zero()) throw SchemaError("the denominators d_g and e_g must be nonzero");
  if (ell < 1) throw SchemaError("ell must be positive");
  return out;
}

}  // namespace hyperdiv
