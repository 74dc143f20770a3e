#pragma once

// Constructors for the named q-series: Euler products f_k = (q^k;q^k)_inf,
// eta-quotients, Pochhammer symbols, sparse exponent families, and the
// third order mock theta functions.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlab/series.hpp"

namespace qlab {

struct EtaFactor {
  std::size_t scale;   // k in f_k
  long long exponent;  // may be negative
  friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

/// prod f_k^{e_k}. Factors are kept sorted by scale with equal scales merged
/// and zero exponents dropped.
class EtaQuotient {
 public:
  EtaQuotient() = default;
  EtaQuotient(std::initializer_list<EtaFactor> factors);
  explicit EtaQuotient(std::vector<EtaFactor> factors);

  const std::vector<EtaFactor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }

  EtaQuotient operator*(const EtaQuotient& other) const;
  EtaQuotient inverse() const;
  /// Replaces every f_k by f_{k * d}, i.e. q -> q^d.
  EtaQuotient dilate(std::size_t d) const;

  /// Expression syntax, e.g. "f_2^4/(f_1^2*f_6)"; "1" when empty.
  std::string to_string() const;

  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;

 private:
  void normalize();
  std::vector<EtaFactor> factors_;
};

/// (x; q^base)_length with x = sign * q^a: the product
/// (1 - x)(1 - x q^base)...; infinite when length is empty.
struct PochhammerSpec {
  Sign sign = Sign::plus;
  std::size_t a = 1;
  std::size_t base = 1;
  std::optional<std::size_t> length;
};

enum class ExponentForm {
  square,              // k^2
  two_square,          // 2k^2
  three_square,        // 3k^2
  six_square,          // 6k^2
  pentagonal,          // k(3k-1)
  double_pentagonal,   // 6k(3k-1)
  pentagonal_half,     // k(3k-1)/2
  triangular,          // k(k+1)/2
  triple_triangular,   // 3k(k+1)/2
  square_minus_one_third,  // k(3k+2) = ((3k+1)^2 - 1)/3
};

enum class WeightRule {
  constant,        // c
  alternating,     // c (-1)^k
  odd_alternating  // c (2k+1)(-1)^k
};

enum class IndexRange { all_integers, nonnegative, positive };

/// sum over k in range of weight(k) q^{exponent(k)}.
struct ExponentFamily {
  ExponentForm form = ExponentForm::square;
  WeightRule rule = WeightRule::constant;
  long long scale = 1;
  IndexRange range = IndexRange::nonnegative;

  /// (exponent, merged weight) pairs with exponent <= order, strictly
  /// increasing in exponent. Colliding exponents from k and -k are summed.
  std::vector<std::pair<std::size_t, long long>> terms(std::size_t order) const;
  std::string to_string() const;

  friend bool operator==(const ExponentFamily&, const ExponentFamily&) = default;
};

long long exponent_of(ExponentForm form, long long k);

Series euler_product(std::size_t k, std::size_t order,
                     Ring ring = Ring::integers());
Series eta_quotient(const EtaQuotient& eq, std::size_t order,
                    Ring ring = Ring::integers());
Series pochhammer(const PochhammerSpec& spec, std::size_t order,
                  Ring ring = Ring::integers());
Series indicator_series(const ExponentFamily& family, std::size_t order,
                        Ring ring = Ring::integers());
/// f_1^3 as sum (-1)^n (2n+1) q^{n(n+1)/2}.
Series jacobi_cube(std::size_t order, Ring ring = Ring::integers());

/// phi(q) = sum_{n in Z} q^{n^2} and psi(q) = sum_{n>=0} q^{n(n+1)/2}.
Series theta_phi(std::size_t order, Ring ring = Ring::integers());
Series theta_psi(std::size_t order, Ring ring = Ring::integers());

/// xi(q) summed term by term from its q-hypergeometric definition, each
/// denominator inverted by the general series inverse.
Series mock_xi_definition(std::size_t order);
Series mock_omega(std::size_t order, Ring ring = Ring::integers());
Series mock_nu(std::size_t order, Ring ring = Ring::integers());
/// Third order f(q) = sum q^{n^2} / (-q;q)_n^2.
Series mock_f3(std::size_t order, Ring ring = Ring::integers());
/// Universal third order g_3(a, q) = sum q^{n(n+1)} / ((a;q)_{n+1} (q/a;q)_{n+1})
/// at a = q^alpha, q -> q^beta, for 0 < alpha < beta. This is the form under
/// which g_3(q, q^2) = omega(q).
Series g3(long long alpha, long long beta, std::size_t order,
          Ring ring = Ring::integers());
/// The variant sum (-q;q)_n q^{n(n+1)/2} / ((a;q)_{n+1} (q/a;q)_{n+1}) at the
/// same arguments; it does not reproduce omega and is kept for comparison.
Series g3_variant(long long alpha, long long beta, std::size_t order,
                  Ring ring = Ring::integers());
/// F(q) = phi(q) phi(q^2)^2 / f_4^2.
Series theta_F(std::size_t order, Ring ring = Ring::integers());

/// The p_xi(n) generating function via q^2 omega(q^3) + f_2^4/(f_1^2 f_6).
Series pxi(std::size_t order, Ring ring = Ring::integers());

}  // namespace qlab
