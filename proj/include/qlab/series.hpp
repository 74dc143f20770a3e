#pragma once

// Truncated formal power series in one variable q over either the exact
// integers or Z/m.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace qlab {

class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a division needs the inverse of a constant term that is not a
/// unit of the coefficient ring.
class NonUnitError : public std::domain_error {
 public:
  NonUnitError(const std::string& what, mpz_class constant)
      : std::domain_error(what), constant_(std::move(constant)) {}
  const mpz_class& constant() const { return constant_; }

 private:
  mpz_class constant_;
};

class OrderError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Coefficient ring: arbitrary precision integers, or integers modulo m with
/// 2 <= m < 2^32.
class Ring {
 public:
  static Ring integers() { return Ring(0); }
  static Ring modulo(std::uint64_t m);

  bool exact() const { return modulus_ == 0; }
  std::uint32_t modulus() const { return modulus_; }
  std::string name() const;

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  explicit Ring(std::uint32_t m) : modulus_(m) {}
  std::uint32_t modulus_;
};

enum class Sign { plus, minus };

/// Coefficients c_0..c_N of a power series known up to and including q^N.
/// Values are immutable after construction; all arithmetic lives in free
/// functions below.
class Series {
 public:
  using Exact = std::vector<mpz_class>;
  using Residues = std::vector<std::uint32_t>;

  /// The zero series of the given order.
  Series(Ring ring, std::size_t order);

  static Series from_exact(Exact coeffs);
  static Series from_residues(std::uint32_t modulus, Residues coeffs);
  /// Builds a series from small integer coefficients, reducing them into the
  /// ring. Missing trailing coefficients are zero.
  static Series from_ints(Ring ring, std::size_t order,
                          std::initializer_list<long long> coeffs);
  static Series from_ints(Ring ring, std::size_t order,
                          std::span<const long long> coeffs);
  static Series one(Ring ring, std::size_t order);
  /// c * q^exponent, or zero if exponent > order.
  static Series monomial(Ring ring, std::size_t order, std::size_t exponent,
                         long long c = 1);

  const Ring& ring() const { return ring_; }
  std::size_t order() const { return order_; }

  /// Coefficient of q^n as an integer (canonical representative for Z/m).
  mpz_class coefficient(std::size_t n) const;
  bool is_zero_at(std::size_t n) const;
  std::size_t nonzero_count() const;

  /// Direct access; throws RingMismatch on the wrong ring kind.
  const Exact& exact() const;
  const Residues& residues() const;

  std::string to_string(std::size_t max_terms = 12) const;

  friend bool operator==(const Series&, const Series&) = default;

 private:
  Series(Ring ring, std::size_t order, std::variant<Exact, Residues> c)
      : ring_(ring), order_(order), coeffs_(std::move(c)) {}

  Ring ring_;
  std::size_t order_;
  std::variant<Exact, Residues> coeffs_;
};

// Binary operations return the minimum order of their operands.
Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series neg(const Series& a);
Series scale(const Series& a, long long c);
Series mul(const Series& a, const Series& b);
/// Multiplicative inverse; the constant term must be a unit.
Series invert(const Series& a);
/// a * invert(b) computed in one pass.
Series divide(const Series& a, const Series& b);
Series pow(const Series& a, long long e);

/// q -> sign * q^k. Keeps a.order(); source coefficients past order/k drop.
Series substitute(const Series& a, std::size_t k, Sign sign);
/// q -> sign * q^k evaluated to an explicit order, which may exceed
/// a.order() up to k * a.order() + k - 1.
Series substitute(const Series& a, std::size_t k, Sign sign,
                  std::size_t order);
/// Multiplication by q^t; the result is known to order a.order() + t.
Series shift(const Series& a, std::size_t t);
/// Drop coefficients past the given order.
Series truncate(const Series& a, std::size_t order);
/// Coefficients at A n + r, as a series in n.
Series extract(const Series& a, std::size_t step, std::size_t offset);
Series reduce_mod(const Series& a, std::uint64_t m);

/// Least n <= upto where the coefficients differ.
std::optional<std::size_t> first_mismatch(const Series& a, const Series& b,
                                          std::size_t upto);
/// first_mismatch over the common order.
std::optional<std::size_t> first_mismatch(const Series& a, const Series& b);

/// a * (1 - x)^power with x = sign * q^k; negative powers divide, which is
/// exact over any ring since the factor has constant term 1.
Series mul_binomial(const Series& a, std::size_t k, Sign sign, long long power);

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator-(const Series& a) { return neg(a); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }
inline Series operator*(long long c, const Series& a) { return scale(a, c); }
inline Series operator/(const Series& a, const Series& b) {
  return divide(a, b);
}

}  // namespace qlab
