#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qlab/congruence.hpp"
#include "qlab/qexpr.hpp"
#include "qlab/suite.hpp"

namespace py = pybind11;
using namespace qlab;

namespace {

Ring ring_for(std::optional<std::uint32_t> mod) {
  return mod ? Ring::modulo(*mod) : Ring::integers();
}

// Coefficients as decimal strings; the Python side turns them into ints.
std::vector<std::string> coefficients(const Series& s) {
  std::vector<std::string> out;
  out.reserve(s.order() + 1);
  for (std::size_t n = 0; n <= s.order(); ++n) out.push_back(s.coefficient(n).get_str());
  return out;
}

std::string verify(const std::string& text, std::optional<std::size_t> order,
                   std::optional<std::uint32_t> mod) {
  IdentityLine line = parse_identity(text);
  std::size_t n = order ? *order : line.order.value_or(200);
  auto m = mod ? mod : line.modulus;
  Ring ring = ring_for(m);
  Series lhs = evaluate(line.lhs, n, ring);
  Series rhs = evaluate(line.rhs, n, ring);
  CheckResult r;
  r.id = line.id.empty() ? "verify" : line.id;
  r.reference = text;
  r.order_checked = n;
  r.first_failure = first_mismatch(lhs, rhs, n);
  r.status = r.first_failure ? CheckStatus::fail : CheckStatus::pass;
  return to_json(r).dump();
}

std::string congruence(const std::string& text, std::size_t step, std::size_t offset,
                       std::uint32_t mod, std::size_t count) {
  CongruenceClaim claim{step, offset, mod, std::nullopt};
  claim.validate();
  std::size_t order = step * (count - 1) + offset;
  Series s = evaluate(text, order, Ring::modulo(mod));
  return to_json(verify_congruence(s, claim, count)).dump();
}

std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> claims_tuple(
    const std::vector<CongruenceClaim>& cs) {
  std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> out;
  for (const auto& c : cs) out.emplace_back(c.step, c.offset, c.modulus);
  return out;
}

std::string paper_suite(const std::optional<std::string>& config_json) {
  SuiteConfig config;
  if (config_json) config = nlohmann::json::parse(*config_json).get<SuiteConfig>();
  Suite suite(config);
  return to_json(suite.full_report()).dump();
}

}  // namespace

PYBIND11_MODULE(_qlab, m) {
  m.doc() = "q-series expansion, identity checks and congruence scans";
  m.attr("__version__") = library_version();

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NonUnitError>(m, "NonUnitError", PyExc_ArithmeticError);

  m.def("expand", [](const std::string& text, std::size_t order,
                     std::optional<std::uint32_t> mod) {
    return coefficients(evaluate(text, order, ring_for(mod)));
  }, py::arg("expr"), py::arg("order") = 200, py::arg("mod") = std::nullopt);
  m.def("normalize", [](const std::string& text) { return print_expr(parse_expr(text)); },
        py::arg("expr"));
  m.def("verify", &verify, py::arg("identity"), py::arg("order") = std::nullopt,
        py::arg("mod") = std::nullopt);
  m.def("congruence", &congruence, py::arg("expr"), py::arg("step"), py::arg("offset"),
        py::arg("mod"), py::arg("count"));
  m.def("scan", [](const std::string& text, std::uint32_t mod, std::size_t max_step,
                   std::size_t count) {
    Series s = evaluate(text, max_step * count - 1, Ring::modulo(mod));
    return claims_tuple(scan(s, mod, max_step, count));
  }, py::arg("expr"), py::arg("mod"), py::arg("max_step"), py::arg("count") = kMinScanCount);
  m.def("qr_family", [](const std::string& kind, std::uint64_t p) {
    auto k = parse_family_kind(kind);
    if (!k) throw std::invalid_argument("unknown family kind '" + kind + "'");
    return claims_tuple(qr_family(*k, p));
  }, py::arg("kind"), py::arg("p"));
  m.def("legendre", &legendre, py::arg("a"), py::arg("p"));
  m.def("paper_suite", &paper_suite, py::arg("config_json") = std::nullopt);
}
