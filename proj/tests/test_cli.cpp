#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nilcov/cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = nilcov::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json result_of(const CliResult& r) {
  json env = json::parse(r.out);
  REQUIRE(env.contains("subcommand"));
  REQUIRE(env.contains("result"));
  REQUIRE(env.contains("version"));
  return env["result"];
}

}  // namespace

TEST_CASE("baer subcommand emits the agreement envelope") {
  auto r = run({"baer", "--r", "2", "--s", "2", "--c", "2", "--method", "both", "--json"});
  REQUIRE(r.code == 0);
  json res = result_of(r);
  CHECK(res["d"] == 2);
  CHECK(res["n"] == 2);
  CHECK(res["invariants"] == json::array({2, 2}));
  CHECK(res["agree"] == true);
}

TEST_CASE("hall count table") {
  auto r = run({"hall", "--letters", "2", "--weight", "3", "--count-only", "--json"});
  REQUIRE(r.code == 0);
  json res = result_of(r);
  REQUIRE(res["counts"].size() == 3);
  CHECK(res["counts"][0]["count"] == 2);
  CHECK(res["counts"][1]["count"] == 1);
  CHECK(res["counts"][2]["count"] == 2);
}

TEST_CASE("hall listing text mode") {
  auto r = run({"hall", "--letters", "2", "--weight", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "x1\nx2\n[x2,x1]\n");
}

TEST_CASE("nf evaluates expressions") {
  auto r = run({"nf", "--letters", "2", "--class", "2", "--expr", "x2 x1", "--json"});
  REQUIRE(r.code == 0);
  CHECK(result_of(r)["exponents"] == json::array({1, 1, 1}));

  auto r2 = run({"nf", "--letters", "2", "--class", "3", "--expr",
                 "[x2,x1]^2 (x1 x2)^-1", "--json"});
  REQUIRE(r2.code == 0);
  auto r3 = run({"nf", "--letters", "2", "--class", "3", "--expr",
                 "[x2 , x1]^2 * (x1*x2)^-1", "--json"});
  REQUIRE(r3.code == 0);
  CHECK(result_of(r2)["exponents"] == result_of(r3)["exponents"]);

  auto bad = run({"nf", "--letters", "2", "--class", "2", "--expr", "x3"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("error") != std::string::npos);
}

TEST_CASE("cover verdict and construct") {
  auto r = run({"cover", "verdict", "--r", "4", "--s", "6", "--c", "2", "--json"});
  REQUIRE(r.code == 0);
  json res = result_of(r);
  CHECK(res["verdict"] == "none-exists");
  CHECK(res["trace"].size() == 6);

  auto r2 = run({"cover", "construct", "--r", "2", "--s", "2", "--json"});
  REQUIRE(r2.code == 0);
  json res2 = result_of(r2);
  CHECK(res2["order"] == 8);
  CHECK(res2["center_order"] == 2);
  CHECK(res2["pass"] == true);
}

TEST_CASE("cover search exit codes and counts") {
  auto r = run({"cover", "search", "--r", "2", "--s", "2", "--c", "1", "--json"});
  REQUIRE(r.code == 0);
  json res = result_of(r);
  CHECK(res["examined"] == 16);
  CHECK(res["consistent"] == 12);
  CHECK(res["passing"] == 4);
  CHECK(res["verdict_consistent"] == true);

  // guard as skip mechanism
  auto r2 = run({"cover", "search", "--r", "2", "--s", "2", "--c", "2",
                 "--max-order", "8"});
  CHECK(r2.code == 3);
}

TEST_CASE("pcp file workflow") {
  std::string path = "test_cli_q8.pcp";
  {
    std::ofstream f(path);
    f << "p = 2\nm = 3\ng1^2 = g3\ng2^2 = g3\n[g2,g1] = g3\n";
  }
  auto r = run({"pcp", "--file", path, "--check", "--json"});
  REQUIRE(r.code == 0);
  CHECK(result_of(r)["consistent"] == true);
  CHECK(result_of(r)["order"] == 8);

  auto r2 = run({"pcp", "--file", path, "--materialize", "--json"});
  REQUIRE(r2.code == 0);
  json res = result_of(r2);
  CHECK(res["center_order"] == 2);
  CHECK(res["nilpotency_class"] == 2);
  CHECK(res["abelianization"] == json::array({2, 2}));
  std::remove(path.c_str());

  auto missing = run({"pcp", "--file", "no_such_file.pcp", "--check"});
  CHECK(missing.code == 1);
}

TEST_CASE("identical invocations are byte-identical modulo elapsed") {
  auto a = run({"baer", "--r", "6", "--s", "9", "--c", "3", "--json"});
  auto b = run({"baer", "--r", "6", "--s", "9", "--c", "3", "--json"});
  REQUIRE(a.code == 0);
  json ja = json::parse(a.out), jb = json::parse(b.out);
  ja.erase("elapsed_ms");
  jb.erase("elapsed_ms");
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("usage errors exit 1, guards exit 3") {
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"baer", "--r", "2"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"hall", "--letters", "3", "--weight", "10", "--max-basis", "100"}).code == 3);
  CHECK(run({"cover", "construct", "--r", "12", "--s", "12"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}
