#pragma once

// Naive reference arithmetic for tests: dense vectors, schoolbook products,
// term-by-term definitions. Deliberately shares no code with the library.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "qlab/series.hpp"

namespace oracle {

using Poly = std::vector<mpz_class>;

inline Poly one(std::size_t n) {
  Poly p(n + 1, 0);
  p[0] = 1;
  return p;
}

inline Poly mul(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.size(), b.size());
  Poly c(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

// 1/a for a[0] = +-1.
inline Poly inv(const Poly& a) {
  Poly b(a.size(), 0);
  b[0] = a[0];  // +-1 is its own inverse
  for (std::size_t n = 1; n < a.size(); ++n) {
    mpz_class s = 0;
    for (std::size_t k = 1; k <= n; ++k) s += a[k] * b[n - k];
    b[n] = -s * b[0];
  }
  return b;
}

// a * (1 - c q^k)
inline Poly times_binomial(const Poly& a, std::size_t k, int c = 1) {
  Poly r = a;
  for (std::size_t i = k; i < a.size(); ++i) r[i] -= c * a[i - k];
  return r;
}

// (q^k; q^k)_inf as a finite product.
inline Poly euler(std::size_t k, std::size_t n) {
  Poly p = one(n);
  for (std::size_t j = k; j <= n; j += k) p = times_binomial(p, j);
  return p;
}

inline Poly eta(std::initializer_list<std::pair<std::size_t, int>> factors, std::size_t n) {
  Poly p = one(n);
  for (auto [k, e] : factors) {
    Poly f = euler(k, n);
    if (e < 0) f = inv(f);
    for (int i = 0; i < (e < 0 ? -e : e); ++i) p = mul(p, f);
  }
  return p;
}

// xi(q) = 1 + 2 sum_{n>=1} q^{6n^2-6n+1} / ((q;q^6)_n (q^5;q^6)_n)
inline Poly xi_definition(std::size_t n) {
  Poly out = one(n);
  for (std::size_t m = 1; 6 * m * m - 6 * m + 1 <= n; ++m) {
    Poly den = one(n);
    for (std::size_t j = 0; j < m; ++j) {
      den = times_binomial(den, 6 * j + 1);
      den = times_binomial(den, 6 * j + 5);
    }
    Poly t = inv(den);
    std::size_t e = 6 * m * m - 6 * m + 1;
    for (std::size_t i = e; i <= n; ++i) out[i] += 2 * t[i - e];
  }
  return out;
}

// omega(q) = sum_{n>=0} q^{2n(n+1)} / (q;q^2)_{n+1}^2
inline Poly omega_definition(std::size_t n) {
  Poly out(n + 1, 0);
  for (std::size_t m = 0; 2 * m * (m + 1) <= n; ++m) {
    Poly den = one(n);
    for (std::size_t j = 0; j <= m; ++j) {
      den = times_binomial(den, 2 * j + 1);
      den = times_binomial(den, 2 * j + 1);
    }
    Poly t = inv(den);
    std::size_t e = 2 * m * (m + 1);
    for (std::size_t i = e; i <= n; ++i) out[i] += t[i - e];
  }
  return out;
}

inline Poly to_poly(const qlab::Series& s) {
  Poly p(s.order() + 1);
  for (std::size_t i = 0; i <= s.order(); ++i) p[i] = s.coefficient(i);
  return p;
}

}  // namespace oracle
