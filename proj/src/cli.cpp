#include "qlab/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qlab/congruence.hpp"
#include "qlab/qexpr.hpp"
#include "qlab/suite.hpp"

namespace qlab {

namespace {

constexpr std::size_t kDefaultOrder = 200;

struct CliConfig {
  std::string expression;
  std::optional<std::size_t> order;
  std::optional<std::uint32_t> modulus;
  std::string progression;
  std::size_t max_step = 0;
  std::optional<std::size_t> count;
  std::string report_path;
  std::string config_path;
  std::string format = "text";
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Ring ring_for(const std::optional<std::uint32_t>& m) {
  return m ? Ring::modulo(*m) : Ring::integers();
}

std::pair<std::size_t, std::size_t> parse_progression(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--progression expects A,B");
  std::size_t a = 0, b = 0;
  try {
    std::size_t used = 0;
    a = std::stoull(s.substr(0, comma), &used);
    if (used != comma) throw UsageError("");
    b = std::stoull(s.substr(comma + 1), &used);
    if (used != s.size() - comma - 1) throw UsageError("");
  } catch (const std::exception&) {
    throw UsageError("--progression expects A,B with non-negative integers, got '" + s + "'");
  }
  if (a == 0 || b >= a) throw UsageError("--progression needs 0 <= B < A");
  return {a, b};
}

// Report-shaped document for a single ad-hoc check.
nlohmann::json single_check_report(const CheckResult& r, nlohmann::json config) {
  nlohmann::json j;
  j["suite_version"] = library_version();
  j["generated_at"] = report_timestamp();
  j["config"] = std::move(config);
  j["results"] = nlohmann::json::array({to_json(r)});
  j["summary"] = {{"pass", r.passed() ? 1 : 0}, {"fail", r.failed() ? 1 : 0}, {"skipped", 0}};
  return j;
}

int cmd_expand(const CliConfig& c, std::ostream& out) {
  std::size_t order = c.order.value_or(kDefaultOrder);
  Series s = evaluate(parse_expr(c.expression), order, ring_for(c.modulus));
  if (c.format == "json") {
    // Written by hand: exact coefficients may exceed 64 bits.
    out << '[';
    for (std::size_t n = 0; n <= order; ++n) out << (n ? "," : "") << s.coefficient(n).get_str();
    out << "]\n";
  } else {
    for (std::size_t n = 0; n <= order; ++n) out << n << ' ' << s.coefficient(n).get_str() << '\n';
  }
  return kExitOk;
}

int cmd_verify(const CliConfig& c, std::ostream& out) {
  IdentityLine line = parse_identity(c.expression);
  std::size_t order = c.order.value_or(line.order.value_or(kDefaultOrder));
  std::optional<std::uint32_t> m = c.modulus ? c.modulus : line.modulus;
  Ring ring = ring_for(m);
  Series lhs = evaluate(line.lhs, order, ring);
  Series rhs = evaluate(line.rhs, order, ring);

  CheckResult r;
  r.id = line.id.empty() ? "verify" : line.id;
  r.reference = print_expr(line.lhs) + " == " + print_expr(line.rhs);
  r.kind = m ? CheckKind::congruence : CheckKind::identity;
  r.order_checked = order;
  r.first_failure = first_mismatch(lhs, rhs, order);
  r.status = r.first_failure ? CheckStatus::fail : CheckStatus::pass;

  if (c.format == "json") {
    nlohmann::json config = {{"command", "verify"}, {"order", order}};
    config["modulus"] = m ? nlohmann::json(*m) : nlohmann::json();
    out << single_check_report(r, config).dump(2) << '\n';
  } else if (r.passed()) {
    out << "pass: " << r.reference << " to order " << order;
    if (m) out << " mod " << *m;
    out << '\n';
  } else {
    std::size_t n = *r.first_failure;
    out << "FAIL: first mismatch at n = " << n << ": lhs " << lhs.coefficient(n).get_str()
        << ", rhs " << rhs.coefficient(n).get_str() << '\n';
  }
  return r.passed() ? kExitOk : kExitFailure;
}

int cmd_congruence(const CliConfig& c, std::ostream& out) {
  auto [a, b] = parse_progression(c.progression);
  if (!c.modulus) throw UsageError("congruence needs --mod");
  std::size_t count;
  if (c.count) {
    count = *c.count;
  } else {
    std::size_t order = c.order.value_or(kDefaultOrder);
    if (order < b) throw UsageError("--order is below the progression offset");
    count = (order - b) / a + 1;
  }
  if (count == 0) throw UsageError("--count must be positive");
  CongruenceClaim claim{a, b, *c.modulus, std::nullopt};
  claim.validate();
  std::size_t order = a * (count - 1) + b;
  Series s = evaluate(parse_expr(c.expression), order, Ring::modulo(*c.modulus));
  CheckResult r = verify_congruence(s, claim, count);

  if (c.format == "json") {
    nlohmann::json config = {{"command", "congruence"}, {"step", a},  {"offset", b},
                             {"modulus", *c.modulus},   {"count", count}};
    out << single_check_report(r, config).dump(2) << '\n';
  } else if (r.passed()) {
    out << "pass: " << claim.to_string() << " for n < " << count << '\n';
  } else {
    out << "FAIL: " << claim.to_string() << " fails at n = " << *r.first_failure << '\n';
  }
  return r.passed() ? kExitOk : kExitFailure;
}

nlohmann::json claims_json(const std::vector<CongruenceClaim>& claims) {
  auto arr = nlohmann::json::array();
  for (const auto& c : claims) arr.push_back({{"step", c.step}, {"offset", c.offset}});
  return arr;
}

int cmd_scan(const CliConfig& c, std::ostream& out) {
  if (!c.modulus) throw UsageError("scan needs --mod");
  if (c.max_step == 0) throw UsageError("scan needs --max-A >= 1");
  std::size_t count = c.count.value_or(kMinScanCount);
  std::size_t order = c.max_step * count - 1;
  Series s = evaluate(parse_expr(c.expression), order, Ring::modulo(*c.modulus));
  auto raw = scan(s, *c.modulus, c.max_step, count);
  auto primitive = primitive_filter(raw);

  if (c.format == "json") {
    nlohmann::json j;
    j["expression"] = print_expr(parse_expr(c.expression));
    j["modulus"] = *c.modulus;
    j["max_step"] = c.max_step;
    j["count"] = count;
    j["order"] = order;
    j["classes"] = claims_json(raw);
    j["primitive"] = claims_json(primitive);
    out << j.dump(2) << '\n';
  } else {
    out << raw.size() << " classes (" << primitive.size() << " primitive) mod " << *c.modulus
        << ", " << count << " terms each\n";
    for (const auto& cl : primitive) out << cl.step << "n+" << cl.offset << '\n';
  }
  return kExitOk;
}

int cmd_paper_suite(const CliConfig& c, std::ostream& out) {
  SuiteConfig config;
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    if (!in) throw UsageError("cannot read config '" + c.config_path + "'");
    try {
      config = nlohmann::json::parse(in).get<SuiteConfig>();
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("bad config '" + c.config_path + "': " + e.what());
    }
  }
  Suite suite(config);
  Report report = suite.full_report();
  nlohmann::json doc = to_json(report);

  if (!c.report_path.empty()) {
    std::ofstream f(c.report_path);
    if (!f) throw UsageError("cannot write report '" + c.report_path + "'");
    f << doc.dump(2) << '\n';
  }
  if (c.format == "json") {
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& r : report.results) {
      std::string status(to_string(r.status));
      for (auto& ch : status) ch = static_cast<char>(std::toupper(ch));
      out << status << ' ' << r.id;
      if (r.status != CheckStatus::skipped) out << " (order " << r.order_checked << ")";
      if (r.first_failure) out << " first failure at " << *r.first_failure;
      if (r.adjudication) out << " [" << *r.adjudication << "]";
      out << '\n';
    }
    out << "summary: " << report.count(CheckStatus::pass) << " pass, "
        << report.count(CheckStatus::fail) << " fail, " << report.count(CheckStatus::skipped)
        << " skipped; " << report.blocking_failures().size() << " blocking\n";
  }
  return report.exit_code();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-series expansion and congruence workbench", "qlab"};
  app.require_subcommand(1);
  CliConfig c;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto add_order = [&](CLI::App* sub) {
    sub->add_option("--order", c.order, "Truncation order (default 200)");
  };
  auto add_mod = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--mod", c.modulus, "Work modulo m")
                  ->check(CLI::Range(2u, 0xFFFFFFFFu));
    if (required) o->required();
  };

  auto* expand = app.add_subcommand("expand", "Print coefficients of an expression");
  expand->add_option("expression", c.expression)->required();
  add_order(expand);
  add_mod(expand, false);
  add_format(expand);

  auto* verify = app.add_subcommand("verify", "Check 'LHS == RHS [order N] [mod m]'");
  verify->add_option("identity", c.expression)->required();
  add_order(verify);
  add_mod(verify, false);
  add_format(verify);

  auto* congruence = app.add_subcommand("congruence", "Check c(An+B) = 0 (mod m)");
  congruence->add_option("expression", c.expression)->required();
  congruence->add_option("--progression", c.progression, "A,B")->required();
  add_mod(congruence, true);
  congruence->add_option("--count", c.count, "Progression terms to check");
  add_order(congruence);
  add_format(congruence);

  auto* scan_cmd = app.add_subcommand("scan", "Find vanishing progressions mod m");
  scan_cmd->add_option("expression", c.expression)->required();
  add_mod(scan_cmd, true);
  scan_cmd->add_option("--max-A", c.max_step, "Largest progression step")->required();
  scan_cmd->add_option("--count", c.count, "Terms each class must survive (>= 32)");
  add_format(scan_cmd);

  auto* suite = app.add_subcommand("paper-suite", "Run the full catalogue of checks");
  suite->add_option("--report", c.report_path, "Write the JSON report here");
  suite->add_option("--config", c.config_path, "JSON file of per-section orders");
  add_format(suite);

  std::vector<std::string> argv_store{"qlab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*expand) return cmd_expand(c, out);
    if (*verify) return cmd_verify(c, out);
    if (*congruence) return cmd_congruence(c, out);
    if (*scan_cmd) return cmd_scan(c, out);
    return cmd_paper_suite(c, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace qlab
