#include <doctest.h>

#include <map>

#include "oracle.hpp"
#include "qlab/qfactory.hpp"

using namespace qlab;

namespace {

// Pentagonal number theorem by integer enumeration.
oracle::Poly pentagonal_f1(std::size_t n) {
  oracle::Poly p(n + 1, 0);
  for (long long k = -100; k <= 100; ++k) {
    long long e = k * (3 * k - 1) / 2;
    if (e >= 0 && e <= static_cast<long long>(n)) p[e] += (k % 2 == 0) ? 1 : -1;
  }
  return p;
}

// Coefficients of q^n by counting representations n = f(k).
template <class F>
oracle::Poly count_reps(std::size_t n, long long lo, long long hi, F f) {
  oracle::Poly p(n + 1, 0);
  for (long long k = lo; k <= hi; ++k) {
    long long e = f(k);
    if (e >= 0 && e <= static_cast<long long>(n)) p[e] += 1;
  }
  return p;
}

}  // namespace

TEST_SUITE("qfactory") {

TEST_CASE("euler product is the pentagonal series") {
  Series f1 = euler_product(1, 7);
  CHECK(f1 == Series::from_ints(Ring::integers(), 7, {1, -1, -1, 0, 0, 1, 0, 1}));
  CHECK(oracle::to_poly(euler_product(1, 500)) == pentagonal_f1(500));
  CHECK(oracle::to_poly(euler_product(3, 300)) == oracle::euler(3, 300));
  CHECK(euler_product(2, 100, Ring::modulo(8)) == reduce_mod(euler_product(2, 100), 8));
  CHECK_THROWS(euler_product(0, 10));
}

TEST_CASE("eta quotient normalization and printing") {
  EtaQuotient q{{6, -1}, {1, -2}, {2, 4}, {3, 0}};
  CHECK(q.factors() == std::vector<EtaFactor>{{1, -2}, {2, 4}, {6, -1}});
  CHECK(q.to_string() == "f_2^4/(f_1^2*f_6)");
  CHECK((q * q.inverse()).empty());
  CHECK(q.dilate(2).to_string() == "f_4^4/(f_2^2*f_12)");
  CHECK(EtaQuotient{}.to_string() == "1");
  CHECK(EtaQuotient{{1, 1}, {1, 1}} == EtaQuotient{{1, 2}});
}

TEST_CASE("eta quotient against a naive product") {
  Series s = eta_quotient({{2, 4}, {1, -2}, {6, -1}}, 150);
  CHECK(oracle::to_poly(s) == oracle::eta({{2, 4}, {1, -2}, {6, -1}}, 150));
  Series m = eta_quotient({{2, 4}, {1, -2}, {6, -1}}, 150, Ring::modulo(4));
  CHECK(m == reduce_mod(s, 4));
}

TEST_CASE("jacobi cube") {
  CHECK(jacobi_cube(400) == pow(euler_product(1, 400), 3));
}

TEST_CASE("theta functions count representations") {
  CHECK(oracle::to_poly(theta_phi(400)) ==
        count_reps(400, -30, 30, [](long long k) { return k * k; }));
  CHECK(oracle::to_poly(theta_psi(400)) ==
        count_reps(400, 0, 40, [](long long k) { return k * (k + 1) / 2; }));
  CHECK(oracle::to_poly(theta_phi(300)) == oracle::eta({{2, 5}, {1, -2}, {4, -2}}, 300));
}

TEST_CASE("pochhammer") {
  // (q; q^2)_3 = (1-q)(1-q^3)(1-q^5)
  Series p = pochhammer({Sign::plus, 1, 2, 3}, 12);
  oracle::Poly want = oracle::one(12);
  for (std::size_t e : {1, 3, 5}) want = oracle::times_binomial(want, e);
  CHECK(oracle::to_poly(p) == want);
  // (-q; q)_inf = 1/(q; q^2)_inf
  Series a = pochhammer({Sign::minus, 1, 1, std::nullopt}, 80);
  Series b = invert(pochhammer({Sign::plus, 1, 2, std::nullopt}, 80));
  CHECK(a == b);
}

TEST_CASE("exponent families") {
  ExponentFamily pent{ExponentForm::pentagonal_half, WeightRule::alternating, 1,
                      IndexRange::all_integers};
  CHECK(oracle::to_poly(indicator_series(pent, 300)) == pentagonal_f1(300));

  ExponentFamily sq{ExponentForm::square, WeightRule::constant, 2, IndexRange::positive};
  auto t = sq.terms(20);
  CHECK(t == std::vector<std::pair<std::size_t, long long>>{{1, 2}, {4, 2}, {9, 2}, {16, 2}});

  // k in Z merges k and -k for even forms.
  ExponentFamily all{ExponentForm::square, WeightRule::constant, 1, IndexRange::all_integers};
  CHECK(all.terms(4) == std::vector<std::pair<std::size_t, long long>>{{0, 1}, {1, 2}, {4, 2}});

  // k(3k+2) lists the n with 3n+1 a square.
  ExponentFamily third{ExponentForm::square_minus_one_third, WeightRule::constant, 1,
                       IndexRange::all_integers};
  auto third_terms = third.terms(2000);
  std::map<std::size_t, long long> got(third_terms.begin(), third_terms.end());
  for (std::size_t n = 0; n <= 2000; ++n) {
    std::size_t r = 0;
    while ((r + 1) * (r + 1) <= 3 * n + 1) ++r;
    CHECK_MESSAGE((r * r == 3 * n + 1) == got.count(n), "n = " << n);
  }

  ExponentFamily odd{ExponentForm::triangular, WeightRule::odd_alternating, 1,
                     IndexRange::nonnegative};
  CHECK(indicator_series(odd, 200) == jacobi_cube(200));
  CHECK(exponent_of(ExponentForm::double_pentagonal, -1) == 24);
  CHECK(exponent_of(ExponentForm::triple_triangular, 2) == 9);
}

TEST_CASE("mock theta functions against their definitions") {
  CHECK(oracle::to_poly(mock_omega(300)) == oracle::omega_definition(300));
  CHECK(oracle::to_poly(mock_xi_definition(300)) == oracle::xi_definition(300));
  CHECK(oracle::to_poly(pxi(300)) == oracle::xi_definition(300));

  // omega(q) begins 1, 2, 3, 4, 6, 8, 10, 14, 18, 22.
  CHECK(mock_omega(9) == Series::from_ints(Ring::integers(), 9,
                                           {1, 2, 3, 4, 6, 8, 10, 14, 18, 22}));
  // nu(q) = sum q^{n(n+1)}/(-q;q^2)_{n+1} begins 1, -1, 2, -2, 2, -3.
  CHECK(mock_nu(5) == Series::from_ints(Ring::integers(), 5, {1, -1, 2, -2, 2, -3}));
  // f(q) = sum q^{n^2}/(-q;q)_n^2 begins 1, 1, -2, 3, -3, 3, -5.
  CHECK(mock_f3(6) == Series::from_ints(Ring::integers(), 6, {1, 1, -2, 3, -3, 3, -5}));
}

TEST_CASE("g3 reproduces omega") {
  CHECK(g3(1, 2, 300) == mock_omega(300));
  CHECK(g3(1, 2, 1).coefficient(0) == 1);
  CHECK(g3_variant(1, 2, 10).coefficient(2) == 4);
  CHECK_THROWS(g3(2, 2, 10));
  Series xi = shift(g3(3, 6, 298), 2) + eta_quotient({{2, 4}, {1, -2}, {6, -1}}, 300);
  CHECK(xi == pxi(300));
}

TEST_CASE("pxi over Z/m equals the reduced exact expansion") {
  Series exact = pxi(1500);
  for (std::uint32_t m : {2u, 3u, 4u, 5u, 8u, 9u}) {
    CHECK(pxi(1500, Ring::modulo(m)) == reduce_mod(exact, m));
  }
  // p_xi(n) is even for n >= 1.
  Series r = reduce_mod(exact, 2);
  CHECK(r == Series::one(Ring::modulo(2), 1500));
}

TEST_CASE("F in theta and eta form") {
  CHECK(theta_F(400) == eta_quotient({{2, 1}, {4, 6}, {1, -2}, {8, -4}}, 400));
}

}  // TEST_SUITE
