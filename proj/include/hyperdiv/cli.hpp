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
 * @file cli.hpp
 * @brief The hyperdiv command line: compute, verify and bench.
 *
 * Exit codes: 0 ok, 1 usage or malformed input, 2 no generic point, 3 retry budget
 * exhausted, 4 verification failed.
 */

#pragma once

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "json_io.hpp"

namespace hyperdiv::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNoGenericPoint = 2, kRetriesExhausted = 3, kVerifyFailed = 4 };

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr const char* kRetriesEnv = "CANTOR_RETRIES";

/// Retry budget from CANTOR_RETRIES, 8 when unset.
inline int default_retries() {
  const char* v = std::getenv(kRetriesEnv);
  if (!v || !*v) return 8;
  try {
    std::size_t used = 0;
    const int r = std::stoi(v, &used);
    if (used != std::string(v).size() || r < 0) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw UsageError(std::string(kRetriesEnv) + " must be a non-negative integer");
  }
}

inline CtxPtr field(u64 p, int d) {
  if (p == 2) throw UsageError("p must be odd");
  if (p < 2 || !detail::is_prime(p)) throw UsageError("p must be an odd prime");
  if (d < 1 || d > 16) throw UsageError("d must be between 1 and 16");
  try {
    CtxPtr ctx = RingCtx::create(p, 1, d);
    ctx->residue_size();
    return ctx;
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
}

/// Ascending comma-separated coefficients; over F_{p^d} each one is d colon-separated digits.
inline Poly parse_coefficients(const std::string& text, const CtxPtr& ctx) {
  std::vector<RingElem> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::vector<u64> digits;
    std::stringstream is(item);
    std::string part;
    while (std::getline(is, part, ':')) {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(part, &used);
        if (used != part.size()) throw std::invalid_argument(part);
        const long long p = static_cast<long long>(ctx->prime());
        digits.push_back(static_cast<u64>(((v % p) + p) % p));
      } catch (const std::exception&) {
        throw UsageError("bad coefficient \"" + item + "\"");
      }
    }
    if (static_cast<int>(digits.size()) != ctx->degree())
      throw UsageError("coefficient \"" + item + "\" needs " + std::to_string(ctx->degree()) + " colon-separated digits");
    c.emplace_back(ctx, std::move(digits));
  }
  if (c.empty()) throw UsageError("f needs coefficients");
  return Poly(ctx, c);
}

inline CurveModel parse_curve(const std::string& text, const CtxPtr& ctx) {
  const std::size_t given = std::count(text.begin(), text.end(), ',') + 1;
  const Poly f = parse_coefficients(text, ctx);
  if (given % 2 || given < 4 || f.degree() != static_cast<int>(given) - 1)
    throw UsageError("f must list 2g+2 coefficients, lowest first, of a polynomial of degree 2g+1");
  if (!(f.lead() == RingElem::one(ctx))) throw UsageError("f must be monic");
  try {
    return make_curve(f);
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
}

inline void check_job(const CurveModel& C, u64 ell) {
  if (C.g < 2) throw UsageError("the genus must be at least 2");
  if (ell <= C.g) throw UsageError("l must exceed the genus");
  if (std::gcd(ell, C.f.ctx()->prime()) != 1) throw UsageError("l must be coprime to p");
}

inline std::string poly_text(const Poly& P) {
  if (P.is_zero()) return "0";
  std::string s;
  for (std::size_t i = P.size(); i-- > 0;) {
    const RingElem c = P.coeff(i);
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    const bool one = c == RingElem::one(P.ctx());
    if (!one || i == 0) s += c.to_string();
    if (i > 0) s += std::string(one ? "" : "*") + "x" + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return s;
}

inline void write_text(std::ostream& out, const CurveModel& C, const DivisionPolys& dp) {
  const CtxPtr& ctx = C.f.ctx();
  out << "p = " << ctx->prime() << ", d = " << ctx->degree() << ", g = " << dp.g << ", l = " << dp.ell << "\n";
  out << "f = " << poly_text(C.f) << "\n";
  for (std::size_t i = 0; i <= dp.g; ++i) out << "d_" << i << " = " << poly_text(dp.d[i]) << "\n";
  for (std::size_t i = 0; i <= dp.g; ++i) out << "e_" << i << " = " << poly_text(dp.e[i]) << "\n";
}

struct ComputeArgs {
  u64 p = 0;
  int d = 1;
  std::string f;
  u64 ell = 0;
  std::optional<u64> seed;
  std::optional<int> retries;
  std::string format = "json";
  bool verify = true;
  std::string output;
};

inline int cmd_compute(const ComputeArgs& a, std::ostream& out, std::ostream& err) {
  const CtxPtr ctx = field(a.p, a.d);
  const CurveModel C = parse_curve(a.f, ctx);
  check_job(C, a.ell);
  PipelineOptions opt;
  opt.seed = a.seed;
  opt.retries = a.retries ? *a.retries : default_retries();
  opt.verify = a.verify;
  DivisionPolys dp;
  try {
    dp = cantor_division_polys(C, a.ell, opt);
  } catch (const NoGenericPoint& e) {
    err << "error: " << e.what() << " (try a field extension with -d)\n";
    return kNoGenericPoint;
  } catch (const RetriesExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kRetriesExhausted;
  }
  std::ofstream file;
  if (!a.output.empty()) {
    file.open(a.output);
    if (!file) throw UsageError("cannot write " + a.output);
  }
  std::ostream& o = a.output.empty() ? out : file;
  if (a.format == "json")
    o << to_json(C, dp).dump() << "\n";
  else
    write_text(o, C, dp);
  return kOk;
}

inline int cmd_verify(const std::string& path, std::size_t samples, u64 seed, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("not JSON: ") + e.what());
  }
  DivisionPolysFile F;
  try {
    F = from_json(j);
  } catch (const SchemaError& e) {
    throw UsageError(e.what());
  }
  const VerifyReport rep = verify_sample(F.dp, F.C, samples, seed);
  if (rep.failure) {
    err << "verification failed at x = " << rep.failure->x << ", y = " << rep.failure->y << " over F_" << F.C.f.ctx()->prime()
        << "^" << F.C.f.ctx()->degree() * verification_degree(F.C.f.ctx()) << "\n";
    return kVerifyFailed;
  }
  if (!rep.ok(samples)) {
    err << "verification failed: only " << rep.checked << " of " << samples << " sampled points could be evaluated\n";
    return kVerifyFailed;
  }
  out << "verified at " << rep.checked << " points\n";
  return kOk;
}

// -- bench --------------------------------------------------------------------

struct BenchRow {
  std::size_t g = 0;
  u64 ell = 0;
  double wall_ms = 0;
  bool verified = false;
};

/// "a..b", "a,b,c" or "a"; an empty string is the empty range.
inline std::vector<u64> parse_range(const std::string& text) {
  std::vector<u64> out;
  if (text.empty()) return out;
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used != s.size() || v < 0) throw std::invalid_argument(s);
      return static_cast<u64>(v);
    } catch (const std::exception&) {
      throw UsageError("bad range \"" + text + "\"");
    }
  };
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const u64 lo = num(text.substr(0, dots)), hi = num(text.substr(dots + 2));
    for (u64 v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(num(item));
  return out;
}

/// l values for genus g: a range, or "g+k" meaning the first l >= g+k coprime to p.
inline std::vector<u64> ells_for(const std::string& spec, std::size_t g, u64 p) {
  if (spec.rfind("g+", 0) == 0) {
    u64 ell = g + parse_range(spec.substr(2)).at(0);
    while (ell % p == 0) ++ell;
    return {ell};
  }
  std::vector<u64> out;
  for (u64 ell : parse_range(spec))
    if (ell > g && ell % p != 0) out.push_back(ell);
  return out;
}

/// First seeded random monic separable f of degree 2g+1 with a generic point for every l.
inline CurveModel bench_curve(u64 p, int d, std::size_t g, const std::vector<u64>& ells, u64 seed) {
  const CtxPtr ctx = field(p, d);
  std::mt19937_64 rng(seed * 1000003 + g);
  const u64 q = ctx->residue_size();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<RingElem> c;
    for (std::size_t i = 0; i <= 2 * g; ++i) c.push_back(element_from_index(ctx, rng() % q));
    c.push_back(RingElem::one(ctx));
    CurveModel C;
    try {
      C = make_curve(Poly(ctx, c));
    } catch (const ContractViolation&) {
      continue;
    }
    bool ok = true;
    for (u64 ell : ells) ok = ok && PointSelector(C, ell).next().has_value();
    if (ok) return C;
  }
  throw NoGenericPoint("no curve with a generic point for every requested l");
}

/// Median wall time of solve + reconstruction over `reps` runs; point selection is excluded.
inline BenchRow bench_row(const CurveModel& C, u64 ell, int reps, std::size_t verify_samples = 20) {
  PointSelector sel(C, ell);
  std::vector<double> times;
  std::optional<DivisionPolys> dp;
  while (auto s = sel.next()) {
    try {
      times.clear();
      for (int r = 0; r < std::max(reps, 1); ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        dp = division_polys_at(C, ell, *s);
        times.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
      }
      break;
    } catch (const ReconstructionFailure&) {
    } catch (const NonUnitPivot&) {
    } catch (const DivisionPrecisionError&) {
    }
    dp.reset();
  }
  if (!dp) throw RetriesExhausted("no point produced division polynomials");
  std::sort(times.begin(), times.end());
  BenchRow row{C.g, ell, times[times.size() / 2], false};
  row.verified = verify_sample(*dp, C, verify_samples, 0).ok(verify_samples);
  return row;
}

struct BenchArgs {
  u64 p = 5;
  int d = 1;
  std::string g = "2";
  std::string l = "g+1";
  int reps = 3;
  u64 curve_seed = 1;
  bool parallel = false;
};

inline int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const CtxPtr ctx = field(a.p, a.d);
  if (a.reps < 1) throw UsageError("repetitions must be positive");
  std::vector<std::pair<CurveModel, u64>> jobs;
  for (u64 g : parse_range(a.g)) {
    if (g < 2) throw UsageError("the genus must be at least 2");
    const auto ells = ells_for(a.l, g, a.p);
    if (ells.empty()) continue;
    CurveModel C;
    try {
      C = bench_curve(a.p, a.d, g, ells, a.curve_seed);
    } catch (const NoGenericPoint& e) {
      err << "error: genus " << g << ": " << e.what() << "\n";
      return kNoGenericPoint;
    }
    for (u64 ell : ells) jobs.emplace_back(C, ell);
  }
  out << "g,ell,wall_ms,verified\n";
  std::vector<BenchRow> rows(jobs.size());
  try {
    if (a.parallel) {
      std::vector<std::future<BenchRow>> fut;
      for (const auto& [C, ell] : jobs) fut.push_back(std::async(std::launch::async, bench_row, C, ell, a.reps, 20));
      for (std::size_t i = 0; i < jobs.size(); ++i) rows[i] = fut[i].get();
    } else {
      for (std::size_t i = 0; i < jobs.size(); ++i) rows[i] = bench_row(jobs[i].first, jobs[i].second, a.reps);
    }
  } catch (const RetriesExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kRetriesExhausted;
  }
  for (const auto& r : rows) {
    std::ostringstream ms;
    ms.setf(std::ios::fixed);
    ms.precision(3);
    ms << r.wall_ms;
    out << r.g << "," << r.ell << "," << ms.str() << "," << (r.verified ? "true" : "false") << "\n";
  }
  return kOk;
}

// -- entry point ----------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Cantor division polynomials of hyperelliptic curves over finite fields of odd characteristic"};
  app.require_subcommand(1);

  ComputeArgs ca;
  u64 seed = 0;
  int retries = 0;
  bool no_verify = false;
  auto* compute = app.add_subcommand("compute", "compute the l-division polynomials of y^2 = f(x)");
  compute->add_option("-p,--p", ca.p, "odd prime p")->required();
  compute->add_option("-d,--d", ca.d, "extension degree of the base field F_{p^d}")->capture_default_str();
  compute->add_option("-f,--f", ca.f, "coefficients of f, lowest first; digits of extension elements joined by ':'")->required();
  compute->add_option("-l,--l,--ell", ca.ell, "l, greater than g and coprime to p")->required();
  auto* seed_opt = compute->add_option("--seed", seed, "seeded order for the choice of Q");
  auto* retries_opt = compute->add_option("--retries", retries, std::string("retry budget (default $") + kRetriesEnv + " or 8)");
  compute->add_option("--format", ca.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  compute->add_flag("--no-verify", no_verify, "skip the group-law check of the result");
  compute->add_option("-o,--output", ca.output, "write to a file instead of standard output");

  std::string vpath;
  std::size_t samples = 20;
  u64 vseed = 0;
  auto* verify = app.add_subcommand("verify", "check a computed file against the group law at random points");
  verify->add_option("file", vpath, "JSON file written by compute")->required();
  verify->add_option("--samples", samples, "number of points")->capture_default_str();
  verify->add_option("--seed", vseed, "seed for the sampled points")->capture_default_str();

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "time solve + reconstruction over ranges of g and l; CSV on standard output");
  bench->add_option("-p,--p", ba.p, "odd prime p")->capture_default_str();
  bench->add_option("-d,--d", ba.d, "extension degree")->capture_default_str();
  bench->add_option("--g", ba.g, "genus range: a..b, a,b,c or a")->capture_default_str();
  bench->add_option("--l", ba.l, "l range, or g+k for the first l >= g+k coprime to p")->capture_default_str();
  bench->add_option("--reps", ba.reps, "repetitions per row (the median is reported)")->capture_default_str();
  bench->add_option("--curve-seed", ba.curve_seed, "seed of the random curve per genus")->capture_default_str();
  bench->add_flag("--parallel", ba.parallel, "run rows concurrently (timings become noisier)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  try {
    if (*compute) {
      if (*seed_opt) ca.seed = seed;
      if (*retries_opt) {
        if (retries < 0) throw UsageError("--retries must be non-negative");
        ca.retries = retries;
      }
      ca.verify = !no_verify;
      return cmd_compute(ca, out, err);
    }
    if (*verify) return cmd_verify(vpath, samples, vseed, out, err);
    return cmd_bench(ba, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace hyperdiv::cli
