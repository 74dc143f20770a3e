#include "qlab/qfactory.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qlab {

// ---------------------------------------------------------------------------
// EtaQuotient

EtaQuotient::EtaQuotient(std::initializer_list<EtaFactor> factors)
    : factors_(factors) {
  normalize();
}

EtaQuotient::EtaQuotient(std::vector<EtaFactor> factors)
    : factors_(std::move(factors)) {
  normalize();
}

void EtaQuotient::normalize() {
  std::map<std::size_t, long long> merged;
  for (const auto& f : factors_) {
    if (f.scale == 0) throw std::invalid_argument("eta factor scale must be >= 1");
    merged[f.scale] += f.exponent;
  }
  factors_.clear();
  for (const auto& [k, e] : merged) {
    if (e != 0) factors_.push_back({k, e});
  }
}

EtaQuotient EtaQuotient::operator*(const EtaQuotient& other) const {
  std::vector<EtaFactor> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return EtaQuotient(std::move(all));
}

EtaQuotient EtaQuotient::inverse() const {
  std::vector<EtaFactor> inv;
  for (const auto& f : factors_) inv.push_back({f.scale, -f.exponent});
  return EtaQuotient(std::move(inv));
}

EtaQuotient EtaQuotient::dilate(std::size_t d) const {
  if (d == 0) throw std::invalid_argument("dilate: d must be >= 1");
  std::vector<EtaFactor> out;
  for (const auto& f : factors_) out.push_back({f.scale * d, f.exponent});
  return EtaQuotient(std::move(out));
}

std::string EtaQuotient::to_string() const {
  auto render = [](const std::vector<EtaFactor>& fs) {
    std::ostringstream s;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (i) s << "*";
      s << "f_" << fs[i].scale;
      if (fs[i].exponent != 1) s << "^" << fs[i].exponent;
    }
    return s.str();
  };
  std::vector<EtaFactor> num, den;
  for (const auto& f : factors_) {
    if (f.exponent > 0) num.push_back(f);
    else den.push_back({f.scale, -f.exponent});
  }
  std::string out = num.empty() ? "1" : render(num);
  if (!den.empty()) {
    bool single = den.size() == 1 && den[0].exponent == 1;
    out += single ? "/" + render(den) : "/(" + render(den) + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exponent families

long long exponent_of(ExponentForm form, long long k) {
  switch (form) {
    case ExponentForm::square: return k * k;
    case ExponentForm::two_square: return 2 * k * k;
    case ExponentForm::three_square: return 3 * k * k;
    case ExponentForm::six_square: return 6 * k * k;
    case ExponentForm::pentagonal: return k * (3 * k - 1);
    case ExponentForm::double_pentagonal: return 6 * k * (3 * k - 1);
    case ExponentForm::pentagonal_half: return k * (3 * k - 1) / 2;
    case ExponentForm::triangular: return k * (k + 1) / 2;
    case ExponentForm::triple_triangular: return 3 * k * (k + 1) / 2;
    case ExponentForm::square_minus_one_third: return k * (3 * k + 2);
  }
  throw std::logic_error("unknown exponent form");
}

namespace {

long long weight_of(const ExponentFamily& fam, long long k) {
  long long sign = (k % 2 == 0) ? 1 : -1;
  switch (fam.rule) {
    case WeightRule::constant: return fam.scale;
    case WeightRule::alternating: return fam.scale * sign;
    case WeightRule::odd_alternating: return fam.scale * sign * (2 * k + 1);
  }
  throw std::logic_error("unknown weight rule");
}

const char* form_name(ExponentForm f) {
  switch (f) {
    case ExponentForm::square: return "k^2";
    case ExponentForm::two_square: return "2k^2";
    case ExponentForm::three_square: return "3k^2";
    case ExponentForm::six_square: return "6k^2";
    case ExponentForm::pentagonal: return "k(3k-1)";
    case ExponentForm::double_pentagonal: return "6k(3k-1)";
    case ExponentForm::pentagonal_half: return "k(3k-1)/2";
    case ExponentForm::triangular: return "k(k+1)/2";
    case ExponentForm::triple_triangular: return "3k(k+1)/2";
    case ExponentForm::square_minus_one_third: return "k(3k+2)";
  }
  return "?";
}

}  // namespace

std::vector<std::pair<std::size_t, long long>> ExponentFamily::terms(
    std::size_t order) const {
  std::map<std::size_t, long long> acc;
  const long long limit = static_cast<long long>(order);
  auto visit = [&](long long k) {
    long long e = exponent_of(form, k);
    if (e >= 0 && e <= limit) acc[static_cast<std::size_t>(e)] += weight_of(*this, k);
    return e;
  };
  // All forms are convex in k with vertex in (-1, 0]; once both k and -k
  // overshoot, larger |k| does too.
  for (long long t = (range == IndexRange::positive ? 1 : 0);; ++t) {
    long long hi = visit(t);
    long long lo = hi;
    if (range == IndexRange::all_integers && t > 0) lo = visit(-t);
    if (hi > limit && lo > limit) break;
  }
  std::vector<std::pair<std::size_t, long long>> out;
  for (const auto& [e, w] : acc) {
    if (w != 0) out.emplace_back(e, w);
  }
  return out;
}

std::string ExponentFamily::to_string() const {
  std::ostringstream s;
  s << "sum_{";
  switch (range) {
    case IndexRange::all_integers: s << "k in Z"; break;
    case IndexRange::nonnegative: s << "k>=0"; break;
    case IndexRange::positive: s << "k>=1"; break;
  }
  s << "} " << scale;
  if (rule == WeightRule::alternating) s << "(-1)^k";
  if (rule == WeightRule::odd_alternating) s << "(2k+1)(-1)^k";
  s << " q^{" << form_name(form) << "}";
  return s.str();
}

// ---------------------------------------------------------------------------
// Products

namespace {

// prod_{j=1}^{order} (1 - q^j) by successive binomial products.
Series euler_base(std::size_t order, Ring ring) {
  Series s = Series::one(ring, order);
  for (std::size_t j = 1; j <= order; ++j) s = mul_binomial(s, j, Sign::plus, 1);
  return s;
}

}  // namespace

Series euler_product(std::size_t k, std::size_t order, Ring ring) {
  if (k == 0) throw std::invalid_argument("euler_product: k must be >= 1");
  return substitute(euler_base(order / k, ring), k, Sign::plus, order);
}

// Factors are applied one at a time: f_k is sparse (pentagonal support), so
// each product or quotient by it costs O(order * nnz(f_k)).
Series eta_quotient(const EtaQuotient& eq, std::size_t order, Ring ring) {
  Series r = Series::one(ring, order);
  if (eq.empty()) return r;
  const std::size_t min_scale = eq.factors().front().scale;
  const Series base = euler_base(order / min_scale, ring);
  for (const auto& f : eq.factors()) {
    Series fk = substitute(base, f.scale, Sign::plus, order);
    if (f.exponent > 0) {
      for (long long i = 0; i < f.exponent; ++i) r = mul(r, fk);
    } else {
      for (long long i = 0; i < -f.exponent; ++i) r = divide(r, fk);
    }
  }
  return r;
}

Series pochhammer(const PochhammerSpec& spec, std::size_t order, Ring ring) {
  if (spec.base == 0) throw std::invalid_argument("pochhammer: base must be >= 1");
  if (!spec.length && spec.a == 0) {
    throw std::invalid_argument(
        "pochhammer: infinite product needs a >= 1 to converge");
  }
  Series s = Series::one(ring, order);
  for (std::size_t j = 0; !spec.length || j < *spec.length; ++j) {
    std::size_t e = spec.a + spec.base * j;
    if (e > order) break;  // this and later factors are 1 to this order
    if (e == 0) {
      // (1 - x) with x = +-1
      s = scale(s, spec.sign == Sign::plus ? 0 : 2);
    } else {
      s = mul_binomial(s, e, spec.sign, 1);
    }
  }
  return s;
}

Series indicator_series(const ExponentFamily& family, std::size_t order,
                        Ring ring) {
  std::vector<long long> c(order + 1, 0);
  for (const auto& [e, w] : family.terms(order)) c[e] = w;
  return Series::from_ints(ring, order, c);
}

Series jacobi_cube(std::size_t order, Ring ring) {
  return indicator_series({ExponentForm::triangular, WeightRule::odd_alternating,
                           1, IndexRange::nonnegative},
                          order, ring);
}

Series theta_phi(std::size_t order, Ring ring) {
  return indicator_series({ExponentForm::square, WeightRule::constant, 1,
                           IndexRange::all_integers},
                          order, ring);
}

Series theta_psi(std::size_t order, Ring ring) {
  return indicator_series({ExponentForm::triangular, WeightRule::constant, 1,
                           IndexRange::nonnegative},
                          order, ring);
}

// ---------------------------------------------------------------------------
// Mock theta functions
//
// Term n is included exactly when its lowest exponent e_n is <= order; its
// rational factor is needed only to order - e_n. Running factors are updated
// from term n to n+1 by a few binomial multiplications or divisions.

Series mock_xi_definition(std::size_t order) {
  const Ring zz = Ring::integers();
  Series sum = Series::one(zz, order);
  for (std::size_t n = 1;; ++n) {
    const std::size_t e = 6 * n * n - 6 * n + 1;
    if (e > order) break;
    const std::size_t rest = order - e;
    Series den = mul(pochhammer({Sign::plus, 1, 6, n}, rest, zz),
                     pochhammer({Sign::plus, 5, 6, n}, rest, zz));
    sum = add(sum, scale(shift(invert(den), e), 2));
  }
  return sum;
}

Series mock_omega(std::size_t order, Ring ring) {
  Series sum(ring, order);
  // 1/(q;q^2)_{n+1}^2
  Series factor = mul_binomial(Series::one(ring, order), 1, Sign::plus, -2);
  for (std::size_t n = 0;; ++n) {
    const std::size_t e = 2 * n * (n + 1);
    if (e > order) break;
    factor = truncate(factor, order - e);
    if (n > 0) factor = mul_binomial(factor, 2 * n + 1, Sign::plus, -2);
    sum = add(sum, shift(factor, e));
  }
  return sum;
}

Series mock_nu(std::size_t order, Ring ring) {
  Series sum(ring, order);
  // 1/(-q;q^2)_{n+1}
  Series factor = mul_binomial(Series::one(ring, order), 1, Sign::minus, -1);
  for (std::size_t n = 0;; ++n) {
    const std::size_t e = n * (n + 1);
    if (e > order) break;
    factor = truncate(factor, order - e);
    if (n > 0) factor = mul_binomial(factor, 2 * n + 1, Sign::minus, -1);
    sum = add(sum, shift(factor, e));
  }
  return sum;
}

Series mock_f3(std::size_t order, Ring ring) {
  Series sum(ring, order);
  // 1/(-q;q)_n^2
  Series factor = Series::one(ring, order);
  for (std::size_t n = 0;; ++n) {
    const std::size_t e = n * n;
    if (e > order) break;
    factor = truncate(factor, order - e);
    if (n > 0) factor = mul_binomial(factor, n, Sign::minus, -2);
    sum = add(sum, shift(factor, e));
  }
  return sum;
}

// g_3 at a = q^alpha with base Q = q^beta.
namespace {

void check_g3_args(long long alpha, long long beta) {
  if (!(0 < alpha && alpha < beta)) {
    throw std::invalid_argument("g3: need 0 < alpha < beta");
  }
}

}  // namespace

Series g3(long long alpha, long long beta, std::size_t order, Ring ring) {
  check_g3_args(alpha, beta);
  const auto a = static_cast<std::size_t>(alpha);
  const auto b = static_cast<std::size_t>(beta);
  Series sum(ring, order);
  Series factor = Series::one(ring, order);
  factor = mul_binomial(factor, a, Sign::plus, -1);
  factor = mul_binomial(factor, b - a, Sign::plus, -1);
  for (std::size_t n = 0;; ++n) {
    const std::size_t e = b * n * (n + 1);
    if (e > order) break;
    factor = truncate(factor, order - e);
    if (n > 0) {
      factor = mul_binomial(factor, a + b * n, Sign::plus, -1);
      factor = mul_binomial(factor, b - a + b * n, Sign::plus, -1);
    }
    sum = add(sum, shift(factor, e));
  }
  return sum;
}

Series g3_variant(long long alpha, long long beta, std::size_t order, Ring ring) {
  check_g3_args(alpha, beta);
  const auto a = static_cast<std::size_t>(alpha);
  const auto b = static_cast<std::size_t>(beta);
  Series sum(ring, order);
  Series factor = Series::one(ring, order);
  factor = mul_binomial(factor, a, Sign::plus, -1);
  factor = mul_binomial(factor, b - a, Sign::plus, -1);
  for (std::size_t n = 0;; ++n) {
    const std::size_t e = b * n * (n + 1) / 2;
    if (e > order) break;
    factor = truncate(factor, order - e);
    if (n > 0) {
      factor = mul_binomial(factor, b * n, Sign::minus, 1);
      factor = mul_binomial(factor, a + b * n, Sign::plus, -1);
      factor = mul_binomial(factor, b - a + b * n, Sign::plus, -1);
    }
    sum = add(sum, shift(factor, e));
  }
  return sum;
}

Series theta_F(std::size_t order, Ring ring) {
  Series phi = theta_phi(order, ring);
  Series phi2 = substitute(phi, 2, Sign::plus);
  Series num = mul(phi, mul(phi2, phi2));
  return eta_quotient({{4, -2}}, order, ring) * num;
}

Series pxi(std::size_t order, Ring ring) {
  Series eta = eta_quotient({{2, 4}, {1, -2}, {6, -1}}, order, ring);
  if (order < 2) return eta;
  Series omega = mock_omega((order - 2) / 3, ring);
  return add(shift(substitute(omega, 3, Sign::plus, order - 2), 2), eta);
}

}  // namespace qlab
