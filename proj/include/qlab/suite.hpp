#pragma once

// The catalogue of results about xi(q) as finite-order checks, and the JSON
// report that aggregates them.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlab/check.hpp"
#include "qlab/congruence.hpp"
#include "qlab/qexpr.hpp"

namespace qlab {

/// Orders per catalogue section. Identity sections are series orders; the
/// characterization, congruence and conjecture sections bound the coefficient
/// index of xi that is examined. Zero skips a section.
struct SuiteConfig {
  std::size_t theta = 1000;
  std::size_t two_dissections = 1000;    // eight 2-dissections
  std::size_t three_dissections = 1000;  // two 3-dissections
  std::size_t mock = 800;
  std::size_t oracle = 2000;  // defining sum of xi vs the fast path
  std::size_t dissections = 600;
  std::size_t stepping = 400;
  std::size_t deep = 200;  // large-step extractions and series congruences
  std::size_t characterizations = 20000;
  std::size_t congruences = 20000;
  std::size_t family_terms = 100;
  std::size_t conjectures = 13000;

  static SuiteConfig all_zero();
  /// Every field multiplied by num/den (rounded down).
  SuiteConfig scaled(std::size_t num, std::size_t den) const;
  /// Order for a corpus "# section:" tag; throws on an unknown section.
  std::size_t section_order(std::string_view section) const;

  friend bool operator==(const SuiteConfig&, const SuiteConfig&) = default;
};

void to_json(nlohmann::json& j, const SuiteConfig& c);
void from_json(const nlohmann::json& j, SuiteConfig& c);

/// A corpus file compiled into the library.
struct CorpusFile {
  std::string name;
  std::string_view text;
};
const std::vector<CorpusFile>& embedded_corpus();

/// Identity lines from the embedded corpus that carry a "section" tag.
struct CatalogEntry {
  IdentityLine line;
  std::string file;
  std::string section;
  std::string reference;
  std::string pair;  // adjudication group, empty if none
};
const std::vector<CatalogEntry>& identity_catalog();

/// A (kind, p) whose congruence list is stated explicitly, with the offsets
/// as printed (empty when only the family is stated).
struct FamilyCase {
  FamilyKind kind;
  std::uint64_t p;
  std::vector<std::size_t> printed_offsets;  // for the first progression step
};
const std::vector<FamilyCase>& family_cases();

struct Report {
  std::string suite_version;
  std::string generated_at;
  SuiteConfig config;
  std::vector<CheckResult> results;  // sorted by id

  std::size_t count(CheckStatus s) const;
  /// Failures that count against the exit code: conjectures never do, and an
  /// adjudicated pair only does when neither variant holds.
  std::vector<const CheckResult*> blocking_failures() const;
  int exit_code() const { return blocking_failures().empty() ? 0 : 1; }
};

nlohmann::json to_json(const CheckResult& r);
nlohmann::json to_json(const Report& r);

/// Runs catalogue sections against shared expansions of xi. Each run_* call
/// returns its results unsorted; full_report sorts by id.
class Suite {
 public:
  explicit Suite(SuiteConfig config = {});

  std::vector<CheckResult> run_section(std::string_view section, std::size_t order);
  std::vector<CheckResult> run_theta(std::size_t order);
  std::vector<CheckResult> run_two_dissections(std::size_t order);
  std::vector<CheckResult> run_three_dissections(std::size_t order);
  std::vector<CheckResult> run_mock_identities(std::size_t order, std::size_t oracle_order);
  std::vector<CheckResult> run_dissections(std::size_t order, std::size_t stepping_order,
                                           std::size_t deep_order);
  std::vector<CheckResult> run_characterizations(std::size_t index_bound);
  std::vector<CheckResult> run_congruences(std::size_t index_bound);
  std::vector<CheckResult> run_families(std::size_t terms);
  std::vector<CheckResult> run_conjectures(std::size_t index_bound);

  /// Runs everything per the config.
  Report full_report();

  /// Shared expansion of xi over Z/m to at least `order`.
  Series xi_mod(std::uint32_t m, std::size_t order);

 private:
  CheckResult check_identity(const CatalogEntry& entry, std::size_t order);
  // Verifies each claim for `terms` terms against xi mod 8, recording the
  // first failing claim in r (whose status must start as pass).
  void verify_claims(const std::vector<CongruenceClaim>& claims, std::size_t terms,
                     CheckResult& r);

  SuiteConfig config_;
  EvalCache cache_;
};

/// Sets the adjudication text on every result that belongs to a pair.
void adjudicate_pairs(std::vector<CheckResult>& results);

/// Version string stamped into reports.
std::string library_version();

/// ISO-8601 UTC timestamp honoring SOURCE_DATE_EPOCH.
std::string report_timestamp();

}  // namespace qlab
