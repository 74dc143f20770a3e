#include "qlab/series.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace qlab {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

u32 reduce_ll(long long v, u32 m) {
  long long r = v % static_cast<long long>(m);
  if (r < 0) r += m;
  return static_cast<u32>(r);
}

u32 reduce_mpz(const mpz_class& v, u32 m) {
  return static_cast<u32>(mpz_fdiv_ui(v.get_mpz_t(), m));
}

u32 add_mod(u32 a, u32 b, u32 m) {
  u64 s = u64{a} + b;
  return static_cast<u32>(s >= m ? s - m : s);
}

u32 sub_mod(u32 a, u32 b, u32 m) {
  return a >= b ? a - b : static_cast<u32>(u64{a} + m - b);
}

u32 mul_mod(u32 a, u32 b, u32 m) {
  return static_cast<u32>((u64{a} * b) % m);
}

// Number of products (each < (m-1)^2) that can be summed into a u64 holding a
// value below m without overflow.
u64 lazy_budget(u32 m) {
  u64 top = u64{m} - 1;
  if (top <= 1) return std::numeric_limits<u64>::max();
  u64 sq = top * top;
  return (std::numeric_limits<u64>::max() - top) / sq;
}

std::optional<u32> inverse_mod(u32 a, u32 m) {
  long long r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  if (r0 != 1) return std::nullopt;
  return reduce_ll(t0, m);
}

void require_same_ring(const Series& a, const Series& b, const char* op) {
  if (a.ring() != b.ring()) {
    throw RingMismatch(std::string(op) + ": ring mismatch (" + a.ring().name() +
                       " vs " + b.ring().name() + ")");
  }
}

template <class Vec>
std::vector<std::size_t> nonzero_indices(const Vec& v) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if constexpr (std::is_same_v<Vec, Series::Exact>) {
      if (sgn(v[i]) != 0) idx.push_back(i);
    } else {
      if (v[i] != 0) idx.push_back(i);
    }
  }
  return idx;
}

Series::Exact mul_exact(const Series::Exact& a, const Series::Exact& b,
                        std::size_t n) {
  Series::Exact c(n + 1);
  auto ia = nonzero_indices(a);
  auto ib = nonzero_indices(b);
  if (ia.size() > ib.size()) {
    return mul_exact(b, a, n);
  }
  for (std::size_t i : ia) {
    if (i > n) break;
    for (std::size_t j : ib) {
      if (i + j > n) break;
      mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return c;
}

// Schoolbook product with the sparser operand on the outside. Accumulators
// are reduced whenever the overflow budget runs out.
Series::Residues mul_residues(const Series::Residues& a,
                              const Series::Residues& b, std::size_t n,
                              u32 m) {
  auto ia = nonzero_indices(a);
  auto ib = nonzero_indices(b);
  const Series::Residues& outer = ia.size() <= ib.size() ? a : b;
  const Series::Residues& inner = ia.size() <= ib.size() ? b : a;
  const auto& outer_idx = ia.size() <= ib.size() ? ia : ib;

  std::vector<u64> acc(n + 1, 0);
  const u64 budget = lazy_budget(m);
  u64 pending = 0;
  for (std::size_t i : outer_idx) {
    if (i > n) break;
    if (pending == budget) {
      for (auto& x : acc) x %= m;
      pending = 0;
    }
    const u64 ai = outer[i];
    const std::size_t len = n - i + 1;
    u64* dst = acc.data() + i;
    const u32* src = inner.data();
    for (std::size_t j = 0; j < len; ++j) dst[j] += ai * src[j];
    ++pending;
  }
  Series::Residues c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) c[k] = static_cast<u32>(acc[k] % m);
  return c;
}

// c_n = (a_n - sum_{j>=1} b_j c_{n-j}) / b_0, skipping zero b_j.
Series::Exact divide_exact(const Series::Exact& a, const Series::Exact& b,
                           std::size_t n) {
  const int b0 = sgn(b[0]);
  if (b[0] != 1 && b[0] != -1) {
    throw NonUnitError("constant term " + b[0].get_str() +
                           " is not a unit in ZZ",
                       b[0]);
  }
  std::vector<std::size_t> ib;
  for (std::size_t j = 1; j <= n && j < b.size(); ++j) {
    if (sgn(b[j]) != 0) ib.push_back(j);
  }
  Series::Exact c(n + 1);
  mpz_class s;
  for (std::size_t k = 0; k <= n; ++k) {
    s = a[k];
    for (std::size_t j : ib) {
      if (j > k) break;
      mpz_submul(s.get_mpz_t(), b[j].get_mpz_t(), c[k - j].get_mpz_t());
    }
    if (b0 < 0) mpz_neg(s.get_mpz_t(), s.get_mpz_t());
    c[k] = s;
  }
  return c;
}

Series::Residues divide_residues(const Series::Residues& a,
                                 const Series::Residues& b, std::size_t n,
                                 u32 m) {
  auto inv0 = inverse_mod(b[0], m);
  if (!inv0) {
    throw NonUnitError("constant term " + std::to_string(b[0]) +
                           " is not a unit in Z/" + std::to_string(m),
                       mpz_class(b[0]));
  }
  std::vector<std::size_t> ib;
  for (std::size_t j = 1; j <= n && j < b.size(); ++j) {
    if (b[j] != 0) ib.push_back(j);
  }
  const u64 budget = lazy_budget(m);
  Series::Residues c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    u64 acc = 0;
    u64 pending = 0;
    for (std::size_t j : ib) {
      if (j > k) break;
      if (pending == budget) {
        acc %= m;
        pending = 0;
      }
      acc += u64{b[j]} * c[k - j];
      ++pending;
    }
    u32 s = sub_mod(a[k], static_cast<u32>(acc % m), m);
    c[k] = mul_mod(s, *inv0, m);
  }
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ring

Ring Ring::modulo(std::uint64_t m) {
  if (m < 2 || m > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("modulus must satisfy 2 <= m < 2^32, got " +
                                std::to_string(m));
  }
  return Ring(static_cast<std::uint32_t>(m));
}

std::string Ring::name() const {
  return exact() ? "ZZ" : "Z/" + std::to_string(modulus_);
}

// ---------------------------------------------------------------------------
// Series

Series::Series(Ring ring, std::size_t order)
    : ring_(ring), order_(order) {
  if (ring.exact()) {
    coeffs_ = Exact(order + 1);
  } else {
    coeffs_ = Residues(order + 1, 0);
  }
}

Series Series::from_exact(Exact coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("series needs a coefficient");
  std::size_t order = coeffs.size() - 1;
  return Series(Ring::integers(), order, std::move(coeffs));
}

Series Series::from_residues(std::uint32_t modulus, Residues coeffs) {
  Ring ring = Ring::modulo(modulus);
  if (coeffs.empty()) throw std::invalid_argument("series needs a coefficient");
  for (auto c : coeffs) {
    if (c >= modulus) throw std::invalid_argument("residue out of range");
  }
  std::size_t order = coeffs.size() - 1;
  return Series(ring, order, std::move(coeffs));
}

Series Series::from_ints(Ring ring, std::size_t order,
                         std::initializer_list<long long> coeffs) {
  return from_ints(ring, order,
                   std::span<const long long>(coeffs.begin(), coeffs.size()));
}

Series Series::from_ints(Ring ring, std::size_t order,
                         std::span<const long long> coeffs) {
  std::size_t n = std::min(order + 1, coeffs.size());
  if (ring.exact()) {
    Exact c(order + 1);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<long>(coeffs[i]);
    return Series(ring, order, std::move(c));
  }
  Residues c(order + 1, 0);
  for (std::size_t i = 0; i < n; ++i) c[i] = reduce_ll(coeffs[i], ring.modulus());
  return Series(ring, order, std::move(c));
}

Series Series::one(Ring ring, std::size_t order) {
  return monomial(ring, order, 0, 1);
}

Series Series::monomial(Ring ring, std::size_t order, std::size_t exponent,
                        long long c) {
  Series s(ring, order);
  if (exponent > order) return s;
  if (ring.exact()) {
    std::get<Exact>(s.coeffs_)[exponent] = static_cast<long>(c);
  } else {
    std::get<Residues>(s.coeffs_)[exponent] = reduce_ll(c, ring.modulus());
  }
  return s;
}

mpz_class Series::coefficient(std::size_t n) const {
  if (n > order_) {
    throw OrderError("coefficient " + std::to_string(n) +
                     " requested from a series of order " +
                     std::to_string(order_));
  }
  if (ring_.exact()) return std::get<Exact>(coeffs_)[n];
  return mpz_class(static_cast<unsigned long>(std::get<Residues>(coeffs_)[n]));
}

bool Series::is_zero_at(std::size_t n) const {
  if (n > order_) throw OrderError("index past series order");
  if (ring_.exact()) return sgn(std::get<Exact>(coeffs_)[n]) == 0;
  return std::get<Residues>(coeffs_)[n] == 0;
}

std::size_t Series::nonzero_count() const {
  return std::visit([](const auto& v) { return nonzero_indices(v).size(); },
                    coeffs_);
}

const Series::Exact& Series::exact() const {
  if (!ring_.exact()) throw RingMismatch("series is over " + ring_.name());
  return std::get<Exact>(coeffs_);
}

const Series::Residues& Series::residues() const {
  if (ring_.exact()) throw RingMismatch("series is over ZZ");
  return std::get<Residues>(coeffs_);
}

std::string Series::to_string(std::size_t max_terms) const {
  std::ostringstream out;
  std::size_t shown = 0;
  for (std::size_t n = 0; n <= order_ && shown < max_terms; ++n) {
    if (is_zero_at(n)) continue;
    mpz_class c = coefficient(n);
    if (shown > 0) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    mpz_class mag = abs(c);
    if (n == 0 || mag != 1) out << mag.get_str();
    if (n == 1) out << "q";
    if (n > 1) out << "q^" << n;
    ++shown;
  }
  if (shown == 0) out << "0";
  out << " + O(q^" << order_ + 1 << ")";
  return out.str();
}

// ---------------------------------------------------------------------------
// Arithmetic

Series add(const Series& a, const Series& b) {
  require_same_ring(a, b, "add");
  std::size_t n = std::min(a.order(), b.order());
  if (a.ring().exact()) {
    Series::Exact c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) c[i] = a.exact()[i] + b.exact()[i];
    return Series::from_exact(std::move(c));
  }
  u32 m = a.ring().modulus();
  Series::Residues c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    c[i] = add_mod(a.residues()[i], b.residues()[i], m);
  }
  return Series::from_residues(m, std::move(c));
}

Series neg(const Series& a) { return scale(a, -1); }

Series sub(const Series& a, const Series& b) {
  require_same_ring(a, b, "sub");
  return add(a, neg(b));
}

Series scale(const Series& a, long long k) {
  if (a.ring().exact()) {
    Series::Exact c = a.exact();
    mpz_class f(static_cast<long>(k));
    for (auto& x : c) x *= f;
    return Series::from_exact(std::move(c));
  }
  u32 m = a.ring().modulus();
  u32 f = reduce_ll(k, m);
  Series::Residues c = a.residues();
  for (auto& x : c) x = mul_mod(x, f, m);
  return Series::from_residues(m, std::move(c));
}

Series mul(const Series& a, const Series& b) {
  require_same_ring(a, b, "mul");
  std::size_t n = std::min(a.order(), b.order());
  if (a.ring().exact()) {
    return Series::from_exact(mul_exact(a.exact(), b.exact(), n));
  }
  u32 m = a.ring().modulus();
  return Series::from_residues(m,
                               mul_residues(a.residues(), b.residues(), n, m));
}

Series divide(const Series& a, const Series& b) {
  require_same_ring(a, b, "divide");
  std::size_t n = std::min(a.order(), b.order());
  if (a.ring().exact()) {
    return Series::from_exact(divide_exact(a.exact(), b.exact(), n));
  }
  u32 m = a.ring().modulus();
  return Series::from_residues(
      m, divide_residues(a.residues(), b.residues(), n, m));
}

Series invert(const Series& a) {
  return divide(Series::one(a.ring(), a.order()), a);
}

Series pow(const Series& a, long long e) {
  if (e < 0) {
    // Avoid negating LLONG_MIN.
    Series inv = invert(a);
    return mul(pow(inv, -(e + 1)), inv);
  }
  Series result = Series::one(a.ring(), a.order());
  Series base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Structural operations

Series substitute(const Series& a, std::size_t k, Sign sign) {
  return substitute(a, k, sign, a.order());
}

Series substitute(const Series& a, std::size_t k, Sign sign,
                  std::size_t order) {
  if (k == 0) throw std::invalid_argument("substitute: k must be >= 1");
  if (order / k > a.order()) {
    throw OrderError("substitute: order " + std::to_string(order) +
                     " needs source order " + std::to_string(order / k) +
                     ", have " + std::to_string(a.order()));
  }
  const std::size_t last = order / k;
  if (a.ring().exact()) {
    Series::Exact c(order + 1);
    for (std::size_t n = 0; n <= last; ++n) {
      c[k * n] = a.exact()[n];
      if (sign == Sign::minus && (n & 1)) mpz_neg(c[k * n].get_mpz_t(), c[k * n].get_mpz_t());
    }
    return Series::from_exact(std::move(c));
  }
  u32 m = a.ring().modulus();
  Series::Residues c(order + 1, 0);
  for (std::size_t n = 0; n <= last; ++n) {
    u32 v = a.residues()[n];
    c[k * n] = (sign == Sign::minus && (n & 1)) ? sub_mod(0, v, m) : v;
  }
  return Series::from_residues(m, std::move(c));
}

Series shift(const Series& a, std::size_t t) {
  std::size_t order = a.order() + t;
  if (a.ring().exact()) {
    Series::Exact c(order + 1);
    std::copy(a.exact().begin(), a.exact().end(), c.begin() + t);
    return Series::from_exact(std::move(c));
  }
  Series::Residues c(order + 1, 0);
  std::copy(a.residues().begin(), a.residues().end(), c.begin() + t);
  return Series::from_residues(a.ring().modulus(), std::move(c));
}

Series truncate(const Series& a, std::size_t order) {
  if (order > a.order()) {
    throw OrderError("truncate: order " + std::to_string(order) +
                     " exceeds series order " + std::to_string(a.order()));
  }
  if (a.ring().exact()) {
    return Series::from_exact(
        Series::Exact(a.exact().begin(), a.exact().begin() + order + 1));
  }
  return Series::from_residues(
      a.ring().modulus(),
      Series::Residues(a.residues().begin(), a.residues().begin() + order + 1));
}

Series extract(const Series& a, std::size_t step, std::size_t offset) {
  if (step == 0 || offset >= step) {
    throw std::invalid_argument("extract: need 0 <= r < A");
  }
  if (offset > a.order()) {
    throw OrderError("extract: offset " + std::to_string(offset) +
                     " past series order " + std::to_string(a.order()));
  }
  std::size_t order = (a.order() - offset) / step;
  if (a.ring().exact()) {
    Series::Exact c(order + 1);
    for (std::size_t n = 0; n <= order; ++n) c[n] = a.exact()[step * n + offset];
    return Series::from_exact(std::move(c));
  }
  Series::Residues c(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    c[n] = a.residues()[step * n + offset];
  }
  return Series::from_residues(a.ring().modulus(), std::move(c));
}

Series reduce_mod(const Series& a, std::uint64_t modulus) {
  Ring target = Ring::modulo(modulus);
  u32 m = target.modulus();
  Series::Residues c(a.order() + 1);
  if (a.ring().exact()) {
    for (std::size_t n = 0; n <= a.order(); ++n) c[n] = reduce_mpz(a.exact()[n], m);
  } else {
    if (a.ring().modulus() % m != 0) {
      throw RingMismatch("cannot reduce " + a.ring().name() + " to " +
                         target.name());
    }
    for (std::size_t n = 0; n <= a.order(); ++n) c[n] = a.residues()[n] % m;
  }
  return Series::from_residues(m, std::move(c));
}

std::optional<std::size_t> first_mismatch(const Series& a, const Series& b,
                                          std::size_t upto) {
  require_same_ring(a, b, "first_mismatch");
  if (upto > std::min(a.order(), b.order())) {
    throw OrderError("first_mismatch: upto " + std::to_string(upto) +
                     " exceeds common order " +
                     std::to_string(std::min(a.order(), b.order())));
  }
  if (a.ring().exact()) {
    for (std::size_t n = 0; n <= upto; ++n) {
      if (a.exact()[n] != b.exact()[n]) return n;
    }
  } else {
    for (std::size_t n = 0; n <= upto; ++n) {
      if (a.residues()[n] != b.residues()[n]) return n;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> first_mismatch(const Series& a, const Series& b) {
  return first_mismatch(a, b, std::min(a.order(), b.order()));
}

Series mul_binomial(const Series& a, std::size_t k, Sign sign,
                    long long power) {
  if (k == 0) throw std::invalid_argument("mul_binomial: k must be >= 1");
  const std::size_t n = a.order();
  const bool plus = sign == Sign::plus;  // factor is (1 - q^k)
  const long long reps = power < 0 ? -power : power;
  if (a.ring().exact()) {
    Series::Exact c = a.exact();
    for (long long r = 0; r < reps; ++r) {
      if (power > 0) {
        for (std::size_t i = n; i >= k && i <= n; --i) {
          if (plus) c[i] -= c[i - k];
          else c[i] += c[i - k];
        }
      } else {
        for (std::size_t i = k; i <= n; ++i) {
          if (plus) c[i] += c[i - k];
          else c[i] -= c[i - k];
        }
      }
    }
    return Series::from_exact(std::move(c));
  }
  u32 m = a.ring().modulus();
  Series::Residues c = a.residues();
  for (long long r = 0; r < reps; ++r) {
    if (power > 0) {
      for (std::size_t i = n; i >= k && i <= n; --i) {
        c[i] = plus ? sub_mod(c[i], c[i - k], m) : add_mod(c[i], c[i - k], m);
      }
    } else {
      for (std::size_t i = k; i <= n; ++i) {
        c[i] = plus ? add_mod(c[i], c[i - k], m) : sub_mod(c[i], c[i - k], m);
      }
    }
  }
  return Series::from_residues(m, std::move(c));
}

}  // namespace qlab
