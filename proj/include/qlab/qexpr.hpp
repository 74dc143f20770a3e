#pragma once

// A small expression language for q-series:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?        exponent: [-]digits or ([-]digits)
//   primary := integer | 'q' | f_k | name '(' arg ')' | g3(q^a, q^b)
//            | extract '(' expr ',' A ',' r ')' | subst '(' expr ',' arg ')'
//            | '(' expr ')'
//   arg     := ['-'] 'q' ['^' k]
//
// Names: phi psi omega nu xi xi_def mtf F. Multiplication is always explicit.
// extract(e, A, r) is sum c(An+r) q^n; subst(e, -q^k) is e with q -> -q^k.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/qfactory.hpp"
#include "qlab/series.hpp"

namespace qlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

enum class NodeKind {
  integer,   // value
  q,
  eta,       // f_{scale}
  call,      // name(sign q^power), or g3 with alpha/beta
  extract,   // children[0], step (scale), offset
  subst,     // children[0] with q -> sign q^scale
  neg,
  add,
  sub,
  mul,
  div,
  pow,       // children[0] ^ exponent
};

struct Expr {
  NodeKind kind = NodeKind::integer;
  long long value = 0;        // integer literal (>= 0), pow exponent
  std::size_t scale = 0;      // eta scale, call power, extract step
  std::size_t offset = 0;     // extract offset
  Sign sign = Sign::plus;     // call argument sign
  std::string name;           // call name
  long long alpha = 0, beta = 0;  // g3 only
  std::vector<Expr> children;

  friend bool operator==(const Expr&, const Expr&) = default;
};

/// Named series accepted in calls.
const std::vector<std::string>& known_series_names();

Expr parse_expr(std::string_view text);
std::string print_expr(const Expr& e);

/// Remembers the largest expansion of each named series per ring so that
/// repeated evaluations share one computation. Not thread-safe.
class EvalCache {
 public:
  /// Named series (as in a call) at base argument q, to the given order.
  Series get(const Expr& call, std::size_t order, Ring ring);
  /// Expands ahead of time so later smaller requests are truncations.
  void warm(const std::string& name, std::size_t order, Ring ring);
  void clear() { entries_.clear(); }

 private:
  std::map<std::pair<std::string, std::uint32_t>, Series> entries_;
};

/// Evaluates to a series of exactly the given order.
Series evaluate(const Expr& e, std::size_t order, Ring ring = Ring::integers(),
                EvalCache* cache = nullptr);
Series evaluate(std::string_view text, std::size_t order,
                Ring ring = Ring::integers());

/// Base order each named series (by name) needs when `e` is evaluated to
/// `order`. Useful for warming an EvalCache once at the largest order.
std::map<std::string, std::size_t> series_requirements(const Expr& e, std::size_t order);

/// If `e` is c * q^t * (eta-quotient) with integer c, returns that form.
struct EtaMonomial {
  long long coefficient = 1;
  std::size_t shift = 0;
  EtaQuotient quotient;
};
std::optional<EtaMonomial> as_eta_monomial(const Expr& e);

/// One corpus line: "LHS == RHS [order N] [mod m]". Comments of the form
/// "# key: value" directly above it (keys id, ref, section, pair) are
/// attached as tags.
struct IdentityLine {
  std::string id;   // the "id" tag, may be empty
  std::map<std::string, std::string> tags;
  Expr lhs, rhs;
  std::optional<std::size_t> order;
  std::optional<std::uint32_t> modulus;
  std::size_t line = 0;  // 1-based line number in its file
};

IdentityLine parse_identity(std::string_view text);
/// Parses a whole corpus file; blank lines and '#' comments are skipped.
std::vector<IdentityLine> parse_corpus(std::string_view text);

}  // namespace qlab
