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

#include <filesystem>
#include <fstream>

#include "hyperdiv/cli.hpp"

using namespace hyperdiv;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hyperdiv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hyperdiv_test_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

class EnvGuard {
 public:
  explicit EnvGuard(const char* value) {
    if (const char* v = std::getenv(cli::kRetriesEnv)) old_ = v;
    if (value)
      setenv(cli::kRetriesEnv, value, 1);
    else
      unsetenv(cli::kRetriesEnv);
  }
  ~EnvGuard() {
    if (old_)
      setenv(cli::kRetriesEnv, old_->c_str(), 1);
    else
      unsetenv(cli::kRetriesEnv);
  }

 private:
  std::optional<std::string> old_;
};

}  // namespace

TEST(Cli, ComputeWritesTheJsonSchema) {
  Result r = run({"compute", "-p", "5", "-f", "1,2,0,3,0,1", "-l", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"p", "d", "f", "ell", "g", "d_polys", "e_polys"}));
  EXPECT_EQ(j["p"], 5);
  EXPECT_EQ(j["d"], 1);
  EXPECT_EQ(j["ell"], 3);
  EXPECT_EQ(j["g"], 2);
  EXPECT_EQ(j["f"], Json::parse("[1,2,0,3,0,1]"));
  ASSERT_EQ(j["d_polys"].size(), 3u);
  ASSERT_EQ(j["e_polys"].size(), 3u);
  EXPECT_EQ(j["d_polys"][2].back(), 1);  // monic denominators
  EXPECT_EQ(j["e_polys"][2].back(), 1);
  // degree bounds for g = 2, l = 3
  EXPECT_LE(j["d_polys"][2].size(), 19u);
  EXPECT_LE(j["e_polys"][2].size(), 31u);
}

TEST(Cli, JsonRoundTripIsByteIdentical) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"compute", "-p", "7", "-f", "3,0,1,2,0,1", "-l", "3"},
           {"compute", "-p", "5", "-d", "2", "-f", "1:1,0:0,2:0,0:1,0:0,1:0", "-l", "3"}}) {
    Result r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    Json j = Json::parse(r.out);
    DivisionPolysFile F = from_json(j);
    EXPECT_EQ(to_json(F.C, F.dp).dump() + "\n", r.out);
  }
}

TEST(Cli, TextFormatListsEveryPolynomial) {
  Result r = run({"compute", "-p", "5", "-f", "1,2,0,3,0,1", "-l", "3", "--format", "text"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* name : {"d_0 =", "d_1 =", "d_2 =", "e_0 =", "e_1 =", "e_2 ="}) EXPECT_NE(r.out.find(name), std::string::npos);
  EXPECT_NE(r.out.find("f = x^5 + 3*x^3 + 2*x + 1"), std::string::npos);
}

TEST(Cli, ComputeUsageErrors) {
  Result r = run({"compute", "-p", "2", "-f", "1,0,0,1,0,1", "-l", "3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("p must be odd"), std::string::npos);
  r = run({"compute", "-p", "5", "-f", "1,2,0,3,0,1", "-l", "5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("coprime"), std::string::npos);
  EXPECT_EQ(run({"compute", "-p", "5", "-f", "1,2,0,3,0,1", "-l", "2"}).code, 1);       // l <= g
  EXPECT_EQ(run({"compute", "-p", "5", "-f", "1,2,1,1", "-l", "3"}).code, 1);           // genus 1
  EXPECT_EQ(run({"compute", "-p", "9", "-f", "1,2,0,3,0,1", "-l", "4"}).code, 1);       // not prime
  EXPECT_EQ(run({"compute", "-p", "5", "-f", "1,2,0,3,0,2", "-l", "3"}).code, 1);       // not monic
  EXPECT_EQ(run({"compute", "-p", "5", "-f", "1,2,0,3,0,1,0", "-l", "3"}).code, 1);     // even length
  EXPECT_EQ(run({"compute", "-p", "5", "-f", "0,0,0,0,0,1", "-l", "3"}).code, 1);       // inseparable
  EXPECT_EQ(run({"compute", "-p", "5", "-f", "1,2,x,3,0,1", "-l", "3"}).code, 1);       // bad digit
  EXPECT_EQ(run({"compute", "-p", "5", "-d", "2", "-f", "1,2,0,3,0,1", "-l", "3"}).code, 1);  // missing digits
  EXPECT_EQ(run({"compute", "-p", "5", "-f", "1,2,0,3,0,1"}).code, 1);                  // missing l
  EXPECT_EQ(run({"compute", "-p", "5", "-f", "1,2,0,3,0,1", "-l", "3", "--format", "xml"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
}

TEST(Cli, NoGenericPointExitsTwo) {
  // a separable monic quintic over F_3 with no point of nonzero y: f(x) is 0 or a non-square everywhere
  CtxPtr c = RingCtx::create(3, 1);
  std::string found;
  for (int k = 0; k < 243 && found.empty(); ++k) {
    std::vector<long long> f = {k % 3, k / 3 % 3, k / 9 % 3, k / 27 % 3, k / 81 % 3, 1};
    Poly F = Poly::from_ints(c, f);
    if (gcd(F, F.derivative()).degree() != 0) continue;
    bool all = true;
    for (long long x = 0; x < 3; ++x) all = all && !field_sqrt(horner(std::span<const RingElem>(F.coeffs()), RingElem(c, x))).value_or(RingElem(c)).is_unit();
    if (!all) continue;
    for (long long v : f) found += (found.empty() ? "" : ",") + std::to_string(v);
  }
  ASSERT_FALSE(found.empty());
  Result r = run({"compute", "-p", "3", "-f", found, "-l", "4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("generic"), std::string::npos);
}

TEST(Cli, RetryBudgetFromEnvironment) {
  {
    EnvGuard env("not-a-number");
    EXPECT_EQ(run({"compute", "-p", "5", "-f", "1,2,0,3,0,1", "-l", "3"}).code, 1);
  }
  {
    EnvGuard env("3");
    EXPECT_EQ(cli::default_retries(), 3);
    EXPECT_EQ(run({"compute", "-p", "5", "-f", "1,2,0,3,0,1", "-l", "3"}).code, 0);
  }
  {
    EnvGuard env(nullptr);
    EXPECT_EQ(cli::default_retries(), 8);
  }
  EXPECT_EQ(run({"compute", "-p", "5", "-f", "1,2,0,3,0,1", "-l", "3", "--retries", "-1"}).code, 1);
}

TEST(Cli, OutputFileAndSeedAreDeterministic) {
  const std::string a = temp_path("seed_a.json"), b = temp_path("seed_b.json");
  ASSERT_EQ(run({"compute", "-p", "7", "-f", "3,0,1,2,0,1", "-l", "3", "--seed", "11", "-o", a}).code, 0);
  ASSERT_EQ(run({"compute", "-p", "7", "-f", "3,0,1,2,0,1", "-l", "3", "--seed", "12", "--no-verify", "-o", b}).code, 0);
  std::ifstream fa(a), fb(b);
  std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, sb);  // the division polynomials do not depend on Q
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, VerifyAcceptsComputedOutput) {
  const std::string path = temp_path("good.json");
  ASSERT_EQ(run({"compute", "-p", "5", "-f", "1,2,0,3,0,1", "-l", "3", "-o", path}).code, 0);
  Result r = run({"verify", path, "--samples", "20", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("20"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, VerifyRejectsACorruptedFile) {
  Result r = run({"compute", "-p", "5", "-f", "1,2,0,3,0,1", "-l", "3"});
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  for (const char* key : {"d_polys", "e_polys"}) {
    for (std::size_t i = 0; i < 3; ++i) {
      Json bad = j;
      auto& c = bad[key][i][0];
      c = (c.get<int>() + 1) % 5;
      const std::string path = temp_path("bad.json");
      write_file(path, bad.dump());
      Result v = run({"verify", path});
      EXPECT_EQ(v.code, 4) << key << i;
      EXPECT_NE(v.err.find("x = "), std::string::npos);
      std::filesystem::remove(path);
    }
  }
}

TEST(Cli, VerifyRejectsBadSchema) {
  Result r = run({"compute", "-p", "5", "-f", "1,2,0,3,0,1", "-l", "3"});
  ASSERT_EQ(r.code, 0);
  const Json good = Json::parse(r.out);
  std::vector<Json> bad;
  bad.push_back(Json::parse("[1,2,3]"));
  {
    Json j = good;
    j.erase("e_polys");
    bad.push_back(j);
  }
  {
    Json j = good;
    j["p"] = 4;
    bad.push_back(j);
  }
  {
    Json j = good;
    j["d_polys"].erase(0);
    bad.push_back(j);
  }
  {
    Json j = good;
    j["f"] = Json::parse("[1,2,3]");
    bad.push_back(j);
  }
  {
    Json j = good;
    j["g"] = 3;
    bad.push_back(j);
  }
  {
    Json j = good;
    j["e_polys"][0][0] = "one";
    bad.push_back(j);
  }
  {
    Json j = good;
    j["d_polys"][2] = Json::array();
    bad.push_back(j);
  }
  const std::string path = temp_path("schema.json");
  for (const auto& j : bad) {
    write_file(path, j.dump());
    EXPECT_EQ(run({"verify", path}).code, 1) << j.dump().substr(0, 80);
  }
  write_file(path, "{not json");
  EXPECT_EQ(run({"verify", path}).code, 1);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"verify", temp_path("does_not_exist.json")}).code, 1);
}

TEST(Cli, BenchCsv) {
  Result r = run({"bench", "--p", "5", "--g", "2", "--l", "3..4", "--reps", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "g,ell,wall_ms,verified");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].rfind("2,3,", 0), 0u);
  EXPECT_EQ(rows[1].rfind("2,4,", 0), 0u);
  for (const auto& row : rows) EXPECT_EQ(row.substr(row.size() - 4), "true");
}

TEST(Cli, BenchEmptyRangePrintsOnlyTheHeader) {
  EXPECT_EQ(run({"bench", "--g", ""}).out, "g,ell,wall_ms,verified\n");
  EXPECT_EQ(run({"bench", "--g", "2", "--l", "5"}).out, "g,ell,wall_ms,verified\n");  // 5 is not coprime to 5
  EXPECT_EQ(run({"bench", "--g", "2", "--l", "1..2"}).out, "g,ell,wall_ms,verified\n");
  EXPECT_EQ(run({"bench", "--g", "3..2"}).out, "g,ell,wall_ms,verified\n");
  EXPECT_EQ(run({"bench", "--g", "1"}).code, 1);
  EXPECT_EQ(run({"bench", "--g", "a..b"}).code, 1);
}

TEST(Cli, BenchRangeHelpers) {
  EXPECT_EQ(cli::parse_range("3..6"), (std::vector<u64>{3, 4, 5, 6}));
  EXPECT_EQ(cli::parse_range("7,14"), (std::vector<u64>{7, 14}));
  EXPECT_EQ(cli::parse_range("9"), (std::vector<u64>{9}));
  EXPECT_TRUE(cli::parse_range("").empty());
  EXPECT_EQ(cli::ells_for("g+1", 4, 5), (std::vector<u64>{6}));  // 5 is skipped
  EXPECT_EQ(cli::ells_for("g+1", 2, 5), (std::vector<u64>{3}));
  EXPECT_EQ(cli::ells_for("1..7", 2, 5), (std::vector<u64>{3, 4, 6, 7}));
}
