#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qlab/cli.hpp"

using qlab::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("expand") {
  Run r = run({"expand", "xi(q)", "--order", "10"});
  CHECK(r.code == 0);
  CHECK(r.out == "0 1\n1 2\n2 2\n3 2\n4 2\n5 2\n6 4\n7 4\n8 4\n9 4\n10 4\n");

  r = run({"expand", "f_1", "--order", "7", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out == "[1,-1,-1,0,0,1,0,1]\n");

  r = run({"expand", "f_1", "--order", "7", "--mod", "4", "--format", "json"});
  CHECK(r.out == "[1,3,3,0,0,1,0,1]\n");

  // Default order is 200.
  r = run({"expand", "q", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out).size() == 201);
}

TEST_CASE("verify") {
  Run r = run({"verify",
               "f_3^2/f_1^2 == f_4^4*f_6*f_12^2/(f_2^5*f_8*f_24) + "
               "2*q*f_4*f_6^2*f_8*f_24/(f_2^4*f_12)",
               "--order", "500"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("pass:", 0) == 0);

  r = run({"verify", "f_1 == f_2", "--order", "2"});
  CHECK(r.code == 1);
  CHECK(r.out == "FAIL: first mismatch at n = 1: lhs -1, rhs 0\n");

  r = run({"verify", "extract(xi(q), 8, 3) == 2*psi(q^3) [mod 3]", "--order", "1500"});
  CHECK(r.code == 0);

  // Order and modulus may come from the line itself.
  r = run({"verify", "f_1^4 == f_2^2 order 300 mod 4"});
  CHECK(r.code == 0);
  CHECK(r.out == "pass: f_1^4 == f_2^2 to order 300 mod 4\n");

  r = run({"verify", "f_1 == f_2", "--order", "5", "--format", "json"});
  CHECK(r.code == 1);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("results").at(0).at("first_failure") == 1);
  CHECK(j.at("summary").at("fail") == 1);
}

TEST_CASE("congruence") {
  Run r = run({"congruence", "xi(q)", "--progression", "96,76", "--mod", "9", "--count", "150"});
  CHECK(r.code == 0);
  CHECK(r.out == "pass: c(96n+76) = 0 (mod 9) for n < 150\n");

  r = run({"congruence", "xi(q)", "--progression", "45,41", "--mod", "5", "--count", "50"});
  CHECK(r.code == 1);
  CHECK(r.out == "FAIL: c(45n+41) = 0 (mod 5) fails at n = 0\n");
}

TEST_CASE("scan") {
  Run a = run({"scan", "xi(q)", "--mod", "8", "--max-A", "24", "--count", "200",
               "--format", "json"});
  CHECK(a.code == 0);
  auto j = nlohmann::json::parse(a.out);
  auto has = [&](std::size_t s, std::size_t o) {
    for (const auto& c : j.at("classes"))
      if (c.at("step") == s && c.at("offset") == o) return true;
    return false;
  };
  CHECK(has(24, 13));
  CHECK(has(24, 22));
  Run b = run({"scan", "xi(q)", "--mod", "8", "--max-A", "24", "--count", "200",
               "--format", "json"});
  CHECK(a.out == b.out);
}

TEST_CASE("usage and parse errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"expand"}).code == 2);
  CHECK(run({"expand", "f_0"}).code == 2);
  CHECK(run({"expand", "2f_1"}).code == 2);
  CHECK(run({"expand", "1/(2+q)"}).code == 2);
  CHECK(run({"expand", "f_1", "--format", "xml"}).code == 2);
  CHECK(run({"expand", "f_1", "--order", "-3"}).code == 2);
  CHECK(run({"verify", "f_1"}).code == 2);
  CHECK(run({"congruence", "xi(q)", "--progression", "4,4", "--mod", "2"}).code == 2);
  CHECK(run({"congruence", "xi(q)", "--progression", "4", "--mod", "2"}).code == 2);
  CHECK(run({"congruence", "xi(q)", "--progression", "4,1"}).code == 2);
  CHECK(run({"scan", "xi(q)", "--mod", "8", "--max-A", "4", "--count", "5"}).code == 2);
  CHECK(run({"paper-suite", "--config", "/nonexistent/config.json"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("paper-suite with a small config") {
  const std::string config = "qlab_cli_test_config.json";
  const std::string report = "qlab_cli_test_report.json";
  {
    std::ofstream f(config);
    f << R"({"theta": 100, "two_dissections": 100, "three_dissections": 100, "mock": 60, "oracle": 60,
             "dissections": 60, "stepping": 40, "deep": 30, "characterizations": 1000,
             "congruences": 1000, "family_terms": 10, "conjectures": 1000})";
  }
  Run r = run({"paper-suite", "--config", config, "--report", report});
  CHECK(r.code == 0);
  CHECK(r.out.find("summary:") != std::string::npos);
  std::ifstream in(report);
  auto j = nlohmann::json::parse(in);
  CHECK(j.at("config").at("theta") == 100);
  CHECK(j.at("results").size() > 100);
  std::remove(config.c_str());
  std::remove(report.c_str());
}

}  // TEST_SUITE
