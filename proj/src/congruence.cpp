#include "qlab/congruence.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace qlab {

std::string_view to_string(CheckKind k) {
  switch (k) {
    case CheckKind::identity: return "identity";
    case CheckKind::congruence: return "congruence";
    case CheckKind::characterization: return "characterization";
    case CheckKind::conjecture: return "conjecture";
  }
  return "?";
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t residue(long long a, std::uint64_t p) {
  long long r = a % static_cast<long long>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
}

}  // namespace

int legendre(long long a, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) {
    throw std::invalid_argument("legendre: " + std::to_string(p) +
                                " is not an odd prime");
  }
  std::uint64_t r = residue(a, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

Series Characterization::expand(std::size_t order, Ring ring) const {
  Series s = Series::monomial(ring, order, 0, constant);
  for (const auto& fam : families) s = add(s, indicator_series(fam, order, ring));
  return s;
}

std::string Characterization::to_string() const {
  std::ostringstream s;
  s << constant;
  for (const auto& fam : families) s << " + " << fam.to_string();
  return s.str();
}

void CongruenceClaim::validate() const {
  if (step < 1) throw std::invalid_argument("congruence claim: step must be >= 1");
  if (offset >= step) {
    throw std::invalid_argument("congruence claim: offset " + std::to_string(offset) +
                                " not below step " + std::to_string(step));
  }
  if (modulus < 2) throw std::invalid_argument("congruence claim: modulus must be >= 2");
}

std::string CongruenceClaim::to_string() const {
  std::ostringstream s;
  s << "c(" << step << "n+" << offset << ") = ";
  if (characterization) {
    s << "[" << characterization->to_string() << "]_n";
  } else {
    s << "0";
  }
  s << " (mod " << modulus << ")";
  return s.str();
}

std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::scaled_3r: return "scaled-3r";
    case FamilyKind::scaled_3r_plus_1: return "scaled-3r-plus-1";
    case FamilyKind::scaled_2r_plus_1: return "scaled-2r-plus-1";
    case FamilyKind::plusminus1_mod_24: return "plusminus1-mod-24";
    case FamilyKind::scaled_12r_plus_1: return "scaled-12r-plus-1";
  }
  return "?";
}

std::optional<FamilyKind> parse_family_kind(std::string_view s) {
  for (auto k : {FamilyKind::scaled_3r, FamilyKind::scaled_3r_plus_1,
                 FamilyKind::scaled_2r_plus_1, FamilyKind::plusminus1_mod_24,
                 FamilyKind::scaled_12r_plus_1}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::vector<CongruenceClaim> qr_family(FamilyKind kind, std::uint64_t p) {
  if (!is_prime(p) || p <= 3) {
    throw std::invalid_argument("qr_family: p must be a prime > 3, got " +
                                std::to_string(p));
  }
  if (kind == FamilyKind::plusminus1_mod_24 && p % 24 != 1 && p % 24 != 23) {
    throw std::invalid_argument("qr_family: plusminus1-mod-24 needs p = +-1 (mod 24), got " +
                                std::to_string(p));
  }
  std::vector<CongruenceClaim> out;
  auto emit = [&](std::size_t step, std::size_t offset, std::uint32_t m) {
    out.push_back({step, offset % step, m, std::nullopt});
  };
  const auto P = static_cast<long long>(p);
  for (long long r = 0; r < P; ++r) {
    switch (kind) {
      case FamilyKind::scaled_3r:
        if (legendre(3 * r, p) == -1) emit(3 * p, 3 * r, 4);
        break;
      case FamilyKind::scaled_3r_plus_1:
        if (legendre(3 * r + 1, p) == -1) emit(3 * p, 3 * r + 1, 4);
        break;
      case FamilyKind::scaled_2r_plus_1:
        if (legendre(2 * r + 1, p) == -1) emit(4 * p, 4 * r + 2, 4);
        break;
      case FamilyKind::plusminus1_mod_24:
        if (legendre(r, p) == -1) emit(3 * p, 3 * r, 8);
        break;
      case FamilyKind::scaled_12r_plus_1:
        if (legendre(12 * r + 1, p) == -1) {
          emit(12 * p, 12 * r + 1, 8);
          emit(48 * p, 48 * r + 4, 8);
        }
        break;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::pair(a.step, a.offset) < std::pair(b.step, b.offset);
  });
  return out;
}

namespace {

// Coefficient n of `s` reduced mod m, for s exact or over Z/M with m | M.
class ResidueReader {
 public:
  ResidueReader(const Series& s, std::uint32_t m) : s_(s), m_(m) {
    if (!s.ring().exact() && s.ring().modulus() % m != 0) {
      throw RingMismatch("cannot read " + s.ring().name() + " coefficients mod " +
                         std::to_string(m));
    }
  }
  std::uint32_t operator()(std::size_t n) const {
    if (s_.ring().exact()) {
      return static_cast<std::uint32_t>(mpz_fdiv_ui(s_.exact()[n].get_mpz_t(), m_));
    }
    return s_.residues()[n] % m_;
  }

 private:
  const Series& s_;
  std::uint32_t m_;
};

}  // namespace

CheckResult verify_congruence(const Series& coeffs, const CongruenceClaim& claim,
                              std::size_t count) {
  claim.validate();
  auto t0 = std::chrono::steady_clock::now();
  CheckResult res;
  res.id = "congruence(" + std::to_string(claim.step) + "," +
           std::to_string(claim.offset) + "," + std::to_string(claim.modulus) + ")";
  res.reference = claim.to_string();
  res.kind = claim.characterization ? CheckKind::characterization
                                    : CheckKind::congruence;
  res.status = CheckStatus::pass;
  if (count > 0) {
    const std::size_t last = claim.step * (count - 1) + claim.offset;
    if (last > coeffs.order()) {
      throw OrderError("verify_congruence: needs coefficient " + std::to_string(last) +
                       " but series order is " + std::to_string(coeffs.order()));
    }
    res.order_checked = last;
    ResidueReader at(coeffs, claim.modulus);
    std::optional<Series> expected;
    if (claim.characterization) {
      expected = claim.characterization->expand(count - 1, Ring::modulo(claim.modulus));
    }
    for (std::size_t n = 0; n < count; ++n) {
      std::uint32_t want = expected ? expected->residues()[n] : 0;
      if (at(claim.step * n + claim.offset) != want) {
        res.status = CheckStatus::fail;
        res.first_failure = n;
        break;
      }
    }
  }
  res.detail = std::to_string(count) + " progression terms";
  res.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

std::vector<CongruenceClaim> scan(const Series& coeffs, std::uint32_t m,
                                  std::size_t max_step, std::size_t count) {
  if (m < 2) throw std::invalid_argument("scan: modulus must be >= 2");
  if (max_step < 1) throw std::invalid_argument("scan: max step must be >= 1");
  if (count < kMinScanCount) {
    throw std::invalid_argument("scan: count must be >= " +
                                std::to_string(kMinScanCount));
  }
  if (max_step * count - 1 > coeffs.order()) {
    throw OrderError("scan: needs order " + std::to_string(max_step * count - 1) +
                     ", series has " + std::to_string(coeffs.order()));
  }
  ResidueReader at(coeffs, m);
  std::vector<bool> zero(max_step * count);
  for (std::size_t i = 0; i < zero.size(); ++i) zero[i] = at(i) == 0;
  std::vector<CongruenceClaim> out;
  for (std::size_t A = 1; A <= max_step; ++A) {
    for (std::size_t B = 0; B < A; ++B) {
      bool all = true;
      for (std::size_t n = 0; n < count && all; ++n) all = zero[A * n + B];
      if (all) out.push_back({A, B, m, std::nullopt});
    }
  }
  return out;
}

std::vector<CongruenceClaim> primitive_filter(std::vector<CongruenceClaim> claims) {
  std::sort(claims.begin(), claims.end(), [](const auto& a, const auto& b) {
    return std::tuple(a.step, a.offset, b.modulus) <
           std::tuple(b.step, b.offset, a.modulus);
  });
  std::vector<CongruenceClaim> kept;
  for (auto& c : claims) {
    bool implied = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
      return !k.characterization && !c.characterization && c.step % k.step == 0 &&
             c.offset % k.step == k.offset && k.modulus % c.modulus == 0;
    });
    if (!implied) kept.push_back(std::move(c));
  }
  return kept;
}

}  // namespace qlab
