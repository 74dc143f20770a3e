#include <doctest.h>

#include "oracle.hpp"
#include "qlab/qexpr.hpp"

using namespace qlab;

namespace {

std::size_t error_offset(std::string_view text) {
  try {
    parse_expr(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  FAIL("expected a parse error for " << text);
  return 0;
}

}  // namespace

TEST_SUITE("qexpr") {

TEST_CASE("precedence and associativity") {
  Expr e = parse_expr("-f_1^2");
  REQUIRE(e.kind == NodeKind::neg);
  CHECK(e.children[0].kind == NodeKind::pow);

  e = parse_expr("1 - 2 - 3");
  REQUIRE(e.kind == NodeKind::sub);
  CHECK(e.children[0].kind == NodeKind::sub);

  e = parse_expr("f_1/f_2*f_3");
  REQUIRE(e.kind == NodeKind::mul);
  CHECK(e.children[0].kind == NodeKind::div);

  e = parse_expr("1 + 2*q");
  REQUIRE(e.kind == NodeKind::add);
  CHECK(e.children[1].kind == NodeKind::mul);

  e = parse_expr("f_2^4/(f_1^2*f_6)");
  REQUIRE(e.kind == NodeKind::div);
  CHECK(e.children[1].kind == NodeKind::mul);
}

TEST_CASE("calls and arguments") {
  Expr e = parse_expr("omega(-q^4)");
  REQUIRE(e.kind == NodeKind::call);
  CHECK(e.name == "omega");
  CHECK(e.sign == Sign::minus);
  CHECK(e.scale == 4);
  e = parse_expr("g3(q^3, q^6)");
  CHECK(e.alpha == 3);
  CHECK(e.beta == 6);
  e = parse_expr("extract(xi(q), 12, 7)");
  REQUIRE(e.kind == NodeKind::extract);
  CHECK(e.scale == 12);
  CHECK(e.offset == 7);
}

TEST_CASE("errors carry offsets") {
  CHECK(error_offset("f_0") == 0);
  CHECK(error_offset("1 + f_0") == 4);
  CHECK(error_offset("2f_1") == 1);       // implicit multiplication
  CHECK(error_offset("f_1 f_2") == 4);
  CHECK(error_offset("zeta(q)") == 0);    // unknown name
  CHECK(error_offset("phi(2q)") == 4);    // malformed argument
  CHECK(error_offset("(f_1") == 4);
  CHECK(error_offset("f_1^2^3") == 5);    // chained powers
  CHECK_THROWS_AS(parse_expr("f_-1"), ParseError);
  CHECK_THROWS_AS(parse_expr("phi(q^0)"), ParseError);
  CHECK_THROWS_AS(parse_expr("99999999999999999999"), ParseError);
  CHECK_THROWS_AS(parse_expr("g3(q^2, q)"), ParseError);
  CHECK_THROWS_AS(parse_expr("extract(f_1, 3, 3)"), ParseError);
}

TEST_CASE("printing") {
  CHECK(print_expr(parse_expr("f_2^4/(f_1^2*f_6)")) == "f_2^4/(f_1^2*f_6)");
  CHECK(print_expr(parse_expr("-(f_1 + f_2)")) == "-(f_1 + f_2)");
  CHECK(print_expr(parse_expr("(-f_1)^2")) == "(-f_1)^2");
  CHECK(print_expr(parse_expr("f_1^-2")) == "f_1^(-2)");
  CHECK(print_expr(parse_expr("1 - (2 - 3)")) == "1 - (2 - 3)");
  CHECK(print_expr(parse_expr("(1 - 2) - 3")) == "1 - 2 - 3");
  CHECK(print_expr(parse_expr("omega(-q^4)")) == "omega(-q^4)");
  CHECK(print_expr(parse_expr("g3(q, q^2)")) == "g3(q, q^2)");
  CHECK(print_expr(parse_expr("subst(psi(q), -q^3)")) == "subst(psi(q), -q^3)");

  const char* long_quotient =
      "f_4*f_6*f_16*f_24^2/(f_2^2*f_8*f_12*f_48) + q*f_6*f_8^2*f_48/(f_2^2*f_16*f_24)";
  Expr e = parse_expr(long_quotient);
  CHECK(parse_expr(print_expr(e)) == e);
}

TEST_CASE("evaluation") {
  CHECK(evaluate("phi(-q)", 9) ==
        Series::from_ints(Ring::integers(), 9, {1, -2, 0, 0, 2, 0, 0, 0, 0, -2}));
  Series ones = evaluate("1/(1-q)", 30);
  for (std::size_t n = 0; n <= 30; ++n) CHECK(ones.coefficient(n) == 1);
  CHECK(evaluate("q^2*omega(q^3) + f_2^4/(f_1^2*f_6)", 300) == pxi(300));
  CHECK(evaluate("xi(q)", 300, Ring::modulo(8)) == pxi(300, Ring::modulo(8)));
  CHECK(evaluate("f_1^-1*f_1", 50) == Series::one(Ring::integers(), 50));
  CHECK(evaluate("extract(xi(q), 3, 1)", 100) == extract(pxi(301), 3, 1));
  CHECK(evaluate("subst(f_1, q^2)", 100) == euler_product(2, 100));
  CHECK(evaluate("subst(f_1, -q)", 100) == substitute(euler_product(1, 100), 1, Sign::minus));
  CHECK_THROWS_AS(evaluate("1/(2+q)", 10), NonUnitError);
  CHECK_THROWS_AS(evaluate("1/q", 10), NonUnitError);
  CHECK(oracle::to_poly(evaluate("f_2^4/(f_1^2*f_6)", 120)) ==
        oracle::eta({{2, 4}, {1, -2}, {6, -1}}, 120));
}

TEST_CASE("eta monomials take the product fast path") {
  auto m = as_eta_monomial(parse_expr("-4*q^2*f_18^3/f_3^2"));
  REQUIRE(m);
  CHECK(m->coefficient == -4);
  CHECK(m->shift == 2);
  CHECK(m->quotient == EtaQuotient{{18, 3}, {3, -2}});
  CHECK(!as_eta_monomial(parse_expr("f_1 + f_2")));
  CHECK(!as_eta_monomial(parse_expr("phi(q)*f_1")));
}

TEST_CASE("series requirements") {
  auto need = series_requirements(parse_expr("extract(xi(q), 12, 7) + omega(-q^3)"), 100);
  CHECK(need.at("xi") == 12 * 100 + 7);
  CHECK(need.at("omega") == 33);
}

TEST_CASE("cache shares expansions across orders") {
  EvalCache cache;
  cache.warm("xi", 500, Ring::modulo(4));
  Series a = evaluate(parse_expr("xi(q)"), 200, Ring::modulo(4), &cache);
  CHECK(a == pxi(200, Ring::modulo(4)));
  Series b = evaluate(parse_expr("xi(q)"), 800, Ring::modulo(4), &cache);
  CHECK(b == pxi(800, Ring::modulo(4)));
}

TEST_CASE("identity lines") {
  IdentityLine l = parse_identity("f_1^4 == f_2^2 mod 4");
  CHECK(l.modulus == 4u);
  CHECK(!l.order);
  l = parse_identity("extract(xi(q), 8, 3) == 2*psi(q^3) [order 1500] [mod 3]");
  CHECK(l.order == 1500u);
  CHECK(l.modulus == 3u);
  CHECK(l.lhs.kind == NodeKind::extract);
  CHECK_THROWS_AS(parse_identity("f_1"), ParseError);
  CHECK_THROWS_AS(parse_identity("f_1 == f_2 == f_3"), ParseError);
  CHECK_THROWS_AS(parse_identity("f_1 == f_2 mod 1"), ParseError);
  try {
    parse_identity("f_1 == f_0");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 7);
  }
}

TEST_CASE("corpus files") {
  const char* text =
      "# header comment\n"
      "\n"
      "# id: a.one\n"
      "# ref: something\n"
      "f_1 == f_1\n"
      "phi(q) == f_2^5/(f_1^2*f_4^2) order 50\n";
  auto lines = parse_corpus(text);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].id == "a.one");
  CHECK(lines[0].tags.at("ref") == "something");
  CHECK(lines[0].line == 5);
  CHECK(lines[1].id.empty());
  CHECK(lines[1].order == 50u);
  try {
    parse_corpus("f_1 == f_1\nf_1 == \n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

}  // TEST_SUITE
