#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace qlab {

enum class CheckKind { identity, congruence, characterization, conjecture };
enum class CheckStatus { pass, fail, skipped };

std::string_view to_string(CheckKind k);
std::string_view to_string(CheckStatus s);

/// Outcome of one finite-order check. `reference` is a short human-readable
/// statement of what was checked; `order_checked` is the largest coefficient
/// index (of the series under test) that was compared.
struct CheckResult {
  std::string id;
  std::string reference;
  CheckKind kind = CheckKind::identity;
  std::size_t order_checked = 0;
  CheckStatus status = CheckStatus::skipped;
  std::optional<std::size_t> first_failure;
  double elapsed_ms = 0.0;
  // Set on printed-vs-corrected pairs: names the variant the data supports.
  std::optional<std::string> adjudication;
  std::string pair;  // printed/corrected group this result belongs to, if any
  std::string detail;

  bool passed() const { return status == CheckStatus::pass; }
  bool failed() const { return status == CheckStatus::fail; }
};

}  // namespace qlab
