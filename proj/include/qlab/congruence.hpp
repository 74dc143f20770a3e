#pragma once

// Legendre symbols, the quadratic-nonresidue congruence families for p_xi,
// verification of single congruence claims, and a progression scanner.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlab/check.hpp"
#include "qlab/qfactory.hpp"
#include "qlab/series.hpp"

namespace qlab {

bool is_prime(std::uint64_t n);

/// (a | p) for an odd prime p, by Euler's criterion. Throws
/// std::invalid_argument if p is not an odd prime.
int legendre(long long a, std::uint64_t p);

/// constant * [n == 0] + sum of the families, read modulo the claim's modulus.
struct Characterization {
  long long constant = 0;
  std::vector<ExponentFamily> families;

  Series expand(std::size_t order, Ring ring) const;
  std::string to_string() const;
  friend bool operator==(const Characterization&,
                         const Characterization&) = default;
};

/// c(step*n + offset) == 0 (mod modulus) for all n >= 0, or == the
/// characterization's n-th coefficient when one is given.
struct CongruenceClaim {
  std::size_t step = 1;
  std::size_t offset = 0;
  std::uint32_t modulus = 2;
  std::optional<Characterization> characterization;

  void validate() const;
  std::string to_string() const;
  friend bool operator==(const CongruenceClaim&,
                         const CongruenceClaim&) = default;
};

enum class FamilyKind {
  scaled_3r,           // 3r nonresidue       -> (3p, 3r) mod 4
  scaled_3r_plus_1,    // 3r+1 nonresidue     -> (3p, 3r+1) mod 4
  scaled_2r_plus_1,    // 2r+1 nonresidue     -> (4p, 4r+2) mod 4
  plusminus1_mod_24,   // r nonresidue, p = +-1 (mod 24) -> (3p, 3r) mod 8
  scaled_12r_plus_1,   // 12r+1 nonresidue    -> (12p, 12r+1), (48p, 48r+4) mod 8
};

std::string_view to_string(FamilyKind k);
std::optional<FamilyKind> parse_family_kind(std::string_view s);

/// Claims sorted by (step, offset). r runs over [0, p).
std::vector<CongruenceClaim> qr_family(FamilyKind kind, std::uint64_t p);

/// Checks the first `count` terms of the progression. `coeffs` may be exact
/// or over Z/M with claim.modulus dividing M.
CheckResult verify_congruence(const Series& coeffs,
                              const CongruenceClaim& claim, std::size_t count);

/// Minimum terms a class must survive before the scanner reports it.
inline constexpr std::size_t kMinScanCount = 32;

/// All (A, B), A <= max_step, B < A, whose first `count` progression
/// coefficients vanish mod m; ordered by (A, B). Needs
/// max_step * count - 1 <= coeffs.order() so every class gets `count` terms.
std::vector<CongruenceClaim> scan(const Series& coeffs, std::uint32_t m,
                                  std::size_t max_step, std::size_t count);

/// Drops claims implied by a smaller kept claim (A | A', B' = B mod A, and
/// the kept modulus a multiple of the dropped one).
std::vector<CongruenceClaim> primitive_filter(std::vector<CongruenceClaim> claims);

}  // namespace qlab
