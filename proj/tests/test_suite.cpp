#include <doctest.h>

#include <cstdlib>
#include <set>

#include "qlab/suite.hpp"

using namespace qlab;

namespace {

SuiteConfig small_config() {
  SuiteConfig c = SuiteConfig::all_zero();
  c.theta = c.two_dissections = c.three_dissections = 150;
  c.mock = c.oracle = c.dissections = 100;
  c.stepping = c.deep = 60;
  c.characterizations = c.congruences = 3000;
  c.family_terms = 20;
  c.conjectures = 2000;
  return c;
}

CheckResult make(std::string id, CheckStatus s, std::string pair = "") {
  CheckResult r;
  r.id = std::move(id);
  r.status = s;
  r.pair = std::move(pair);
  if (s == CheckStatus::fail) r.first_failure = 0;
  return r;
}

}  // namespace

TEST_SUITE("suite") {

TEST_CASE("config serialization") {
  SuiteConfig c = small_config();
  nlohmann::json j = c;
  CHECK(j.at("two_dissections") == 150);
  CHECK(j.get<SuiteConfig>() == c);
  j["bogus"] = 1;
  CHECK_THROWS(j.get<SuiteConfig>());
  CHECK(SuiteConfig{}.scaled(1, 2).characterizations == 10000);
  CHECK_THROWS(c.section_order("nowhere"));
  CHECK(c.section_order("deep") == 60);
}

TEST_CASE("lemma sections") {
  Suite s;
  auto l1 = s.run_two_dissections(300);
  CHECK(l1.size() == 8);
  for (const auto& r : l1) {
    INFO(r.id);
    CHECK(r.passed());
    CHECK(r.order_checked == 300);
    CHECK(r.kind == CheckKind::identity);
  }
  for (const auto& r : s.run_three_dissections(300)) {
    INFO(r.id);
    CHECK(r.passed());
  }
}

TEST_CASE("a perturbed exponent fails early") {
  // 1/f_1^2 dissection with f_8^5 changed to f_8^4.
  IdentityLine l = parse_identity(
      "1/f_1^2 == f_8^4/(f_2^5*f_16^2) + 2*q*f_4^2*f_16^2/(f_2^5*f_8)");
  auto mismatch = first_mismatch(evaluate(l.lhs, 200), evaluate(l.rhs, 200));
  REQUIRE(mismatch);
  CHECK(*mismatch <= 16);
  IdentityLine ok = parse_identity(
      "1/f_1^2 == f_8^5/(f_2^5*f_16^2) + 2*q*f_4^2*f_16^2/(f_2^5*f_8)");
  CHECK(!first_mismatch(evaluate(ok.lhs, 200), evaluate(ok.rhs, 200)));
}

TEST_CASE("psi has no q^{3n+2} terms in its 3-dissection") {
  Series s = extract(theta_psi(900), 3, 2);
  CHECK(s == Series(Ring::integers(), s.order()));
}

TEST_CASE("order zero skips everything") {
  Suite s(SuiteConfig::all_zero());
  Report r = s.full_report();
  CHECK(!r.results.empty());
  CHECK(r.count(CheckStatus::skipped) == r.results.size());
  CHECK(r.exit_code() == 0);
}

TEST_CASE("small full report") {
  Suite s(small_config());
  Report r = s.full_report();
  CHECK(std::is_sorted(r.results.begin(), r.results.end(),
                       [](const auto& a, const auto& b) { return a.id < b.id; }));
  std::set<std::string> ids;
  for (const auto& c : r.results) {
    INFO(c.id);
    CHECK(ids.insert(c.id).second);
    CHECK(c.failed() == c.first_failure.has_value());
    if (c.failed() && c.pair.empty()) CHECK(c.kind == CheckKind::conjecture);
  }
  CHECK(r.blocking_failures().empty());
  CHECK(r.exit_code() == 0);

  nlohmann::json j = to_json(r);
  std::set<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.insert(k);
  CHECK(keys == std::set<std::string>{"suite_version", "generated_at", "config", "results",
                                      "summary"});
  for (const auto& res : j.at("results")) {
    for (const char* k : {"id", "paper_ref", "kind", "order_checked", "status",
                          "first_failure", "elapsed"}) {
      CHECK(res.contains(k));
    }
  }
  CHECK(j.at("summary").at("pass").get<std::size_t>() == r.count(CheckStatus::pass));
}

TEST_CASE("adjudication") {
  std::vector<CheckResult> rs = {make("a.printed", CheckStatus::fail, "a"),
                                 make("a.corrected", CheckStatus::pass, "a"),
                                 make("b.x", CheckStatus::fail, "b"),
                                 make("b.y", CheckStatus::fail, "b"),
                                 make("c", CheckStatus::pass)};
  adjudicate_pairs(rs);
  CHECK(rs[0].adjudication == "data supports a.corrected");
  CHECK(rs[1].adjudication == rs[0].adjudication);
  CHECK(rs[2].adjudication == "neither variant holds");
  CHECK(!rs[4].adjudication);

  Report report;
  report.results = rs;
  auto blocking = report.blocking_failures();
  REQUIRE(blocking.size() == 2);
  CHECK(blocking[0]->id == "b.x");

  CheckResult conj = make("conj", CheckStatus::fail);
  conj.kind = CheckKind::conjecture;
  report.results = {conj};
  CHECK(report.exit_code() == 0);
}

TEST_CASE("timestamps honor SOURCE_DATE_EPOCH") {
  setenv("SOURCE_DATE_EPOCH", "86400", 1);
  CHECK(report_timestamp() == "1970-01-02T00:00:00Z");
  unsetenv("SOURCE_DATE_EPOCH");
  CHECK(report_timestamp().size() == 20);
}

TEST_CASE("family cases cover every printed list") {
  std::size_t printed = 0;
  for (const auto& fc : family_cases()) printed += !fc.printed_offsets.empty();
  CHECK(printed == 11);
  CHECK(family_cases().size() == 13);
}

}  // TEST_SUITE
