#include "qlab/qexpr.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <regex>
#include <sstream>

namespace qlab {

const std::vector<std::string>& known_series_names() {
  static const std::vector<std::string> names = {
      "phi", "psi", "omega", "nu", "xi", "xi_def", "mtf", "F", "g3"};
  return names;
}

namespace {

Expr leaf(NodeKind k) {
  Expr e;
  e.kind = k;
  return e;
}

Expr node(NodeKind k, std::vector<Expr> children) {
  Expr e;
  e.kind = k;
  e.children = std::move(children);
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '(') {
        fail("implicit multiplication is not supported; use '*'");
      }
      fail(std::string("unexpected '") + c + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, at);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) {
      fail(std::string("expected '") + c + "'" +
           (pos_ < s_.size() ? std::string(", found '") + s_[pos_] + "'"
                             : std::string(", found end of input")));
    }
  }

  long long number() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      fail("expected an integer");
    }
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      int d = s_[pos_] - '0';
      if (v > (std::numeric_limits<long long>::max() - d) / 10) {
        fail_at("integer literal too large", start);
      }
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = node(NodeKind::add, {std::move(lhs), term()});
      } else if (accept('-')) {
        lhs = node(NodeKind::sub, {std::move(lhs), term()});
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = node(NodeKind::mul, {std::move(lhs), unary()});
      } else if (accept('/')) {
        lhs = node(NodeKind::div, {std::move(lhs), unary()});
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return node(NodeKind::neg, {unary()});
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    Expr p = node(NodeKind::pow, {std::move(base)});
    bool paren = accept('(');
    bool minus = accept('-');
    p.value = minus ? -number() : number();
    if (paren) expect(')');
    if (peek('^')) fail("chained '^' is ambiguous; use parentheses");
    return p;
  }

  // ['-'] q ['^' k] -> (sign, k)
  std::pair<Sign, std::size_t> argument() {
    Sign sign = accept('-') ? Sign::minus : Sign::plus;
    skip_ws();
    std::size_t at = pos_;
    if (identifier() != "q") fail_at("argument must have the form +-q^k", at);
    std::size_t k = 1;
    if (accept('^')) {
      at = pos_;
      long long v = number();
      if (v < 1) fail_at("argument power must be >= 1", at);
      k = static_cast<std::size_t>(v);
    }
    return {sign, k};
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Expr e = leaf(NodeKind::integer);
      e.value = number();
      return e;
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      fail(std::string("unexpected '") + c + "'");
    }
    const std::size_t start = pos_;
    std::string id = identifier();
    if (id == "q") return leaf(NodeKind::q);
    if (id.rfind("f_", 0) == 0) {
      std::string digits = id.substr(2);
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        fail_at("invalid eta symbol '" + id + "': expected f_k with k >= 1", start);
      }
      if (digits.size() > 9) fail_at("eta scale too large", start);
      std::size_t k = std::stoul(digits);
      if (k == 0) fail_at("invalid scale in f_0: k must be >= 1", start);
      Expr e = leaf(NodeKind::eta);
      e.scale = k;
      return e;
    }
    if (id == "extract") {
      expect('(');
      Expr e = node(NodeKind::extract, {expr()});
      expect(',');
      std::size_t at = pos_;
      long long a = number();
      expect(',');
      long long r = number();
      expect(')');
      if (a < 1 || r >= a) fail_at("extract needs step >= 1 and 0 <= offset < step", at);
      e.scale = static_cast<std::size_t>(a);
      e.offset = static_cast<std::size_t>(r);
      return e;
    }
    if (id == "subst") {
      expect('(');
      Expr e = node(NodeKind::subst, {expr()});
      expect(',');
      auto [sign, k] = argument();
      expect(')');
      e.sign = sign;
      e.scale = k;
      return e;
    }
    if (id == "g3") {
      expect('(');
      std::size_t at = pos_;
      auto [sa, a] = argument();
      expect(',');
      auto [sb, b] = argument();
      expect(')');
      if (sa != Sign::plus || sb != Sign::plus || a >= b) {
        fail_at("g3 needs arguments q^a, q^b with 0 < a < b", at);
      }
      Expr e = leaf(NodeKind::call);
      e.name = id;
      e.alpha = static_cast<long long>(a);
      e.beta = static_cast<long long>(b);
      e.scale = 1;
      return e;
    }
    const auto& names = known_series_names();
    if (std::find(names.begin(), names.end(), id) == names.end()) {
      fail_at("unknown name '" + id + "'", start);
    }
    expect('(');
    auto [sign, k] = argument();
    expect(')');
    Expr e = leaf(NodeKind::call);
    e.name = id;
    e.sign = sign;
    e.scale = k;
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// Binding strength used by the printer: higher binds tighter.
int level(const Expr& e) {
  switch (e.kind) {
    case NodeKind::add:
    case NodeKind::sub: return 1;
    case NodeKind::mul:
    case NodeKind::div: return 2;
    case NodeKind::neg: return 3;
    case NodeKind::pow: return 4;
    default: return 5;
  }
}

std::string arg_string(Sign s, std::size_t k) {
  std::string out = s == Sign::minus ? "-q" : "q";
  if (k != 1) out += "^" + std::to_string(k);
  return out;
}

void print_into(const Expr& e, std::ostringstream& out);

void print_child(const Expr& c, int min_level, std::ostringstream& out) {
  if (level(c) < min_level) {
    out << '(';
    print_into(c, out);
    out << ')';
  } else {
    print_into(c, out);
  }
}

void print_into(const Expr& e, std::ostringstream& out) {
  switch (e.kind) {
    case NodeKind::integer: out << e.value; return;
    case NodeKind::q: out << 'q'; return;
    case NodeKind::eta: out << "f_" << e.scale; return;
    case NodeKind::call:
      if (e.name == "g3") {
        out << "g3(" << arg_string(Sign::plus, e.alpha) << ", "
            << arg_string(Sign::plus, e.beta) << ')';
      } else {
        out << e.name << '(' << arg_string(e.sign, e.scale) << ')';
      }
      return;
    case NodeKind::extract:
      out << "extract(";
      print_into(e.children[0], out);
      out << ", " << e.scale << ", " << e.offset << ')';
      return;
    case NodeKind::subst:
      out << "subst(";
      print_into(e.children[0], out);
      out << ", " << arg_string(e.sign, e.scale) << ')';
      return;
    case NodeKind::neg:
      out << '-';
      print_child(e.children[0], 3, out);
      return;
    case NodeKind::add:
    case NodeKind::sub:
      print_child(e.children[0], 1, out);
      out << (e.kind == NodeKind::add ? " + " : " - ");
      print_child(e.children[1], 2, out);
      return;
    case NodeKind::mul:
    case NodeKind::div:
      print_child(e.children[0], 2, out);
      out << (e.kind == NodeKind::mul ? '*' : '/');
      print_child(e.children[1], 3, out);
      return;
    case NodeKind::pow:
      print_child(e.children[0], 5, out);
      out << '^';
      if (e.value < 0) {
        out << '(' << e.value << ')';
      } else {
        out << e.value;
      }
      return;
  }
}

bool checked_mul(long long a, long long b, long long& out) {
  return !__builtin_mul_overflow(a, b, &out);
}

EtaQuotient eta_power(const EtaQuotient& q, long long e) {
  std::vector<EtaFactor> f;
  for (const auto& x : q.factors()) f.push_back({x.scale, x.exponent * e});
  return EtaQuotient(std::move(f));
}

// The named series at argument q.
Series base_series(const std::string& name, long long alpha, long long beta,
                   std::size_t order, Ring ring) {
  if (name == "g3") return g3(alpha, beta, order, ring);
  if (name == "phi") return theta_phi(order, ring);
  if (name == "psi") return theta_psi(order, ring);
  if (name == "omega") return mock_omega(order, ring);
  if (name == "nu") return mock_nu(order, ring);
  if (name == "xi") return pxi(order, ring);
  if (name == "xi_def") {
    Series s = mock_xi_definition(order);
    return ring.exact() ? s : reduce_mod(s, ring.modulus());
  }
  if (name == "mtf") return mock_f3(order, ring);
  if (name == "F") return theta_F(order, ring);
  throw std::invalid_argument("unknown series '" + name + "'");
}

std::string cache_key(const Expr& call) {
  if (call.name != "g3") return call.name;
  return "g3:" + std::to_string(call.alpha) + ":" + std::to_string(call.beta);
}

Series named_series(const Expr& e, std::size_t order, Ring ring, EvalCache* cache) {
  const std::size_t k = e.scale;
  const std::size_t base = order / k;
  Series s = cache ? cache->get(e, base, ring)
                   : base_series(e.name, e.alpha, e.beta, base, ring);
  if (k == 1 && e.sign == Sign::plus) return s;
  return substitute(s, k, e.sign, order);
}

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse_all(); }

namespace {

void collect_requirements(const Expr& e, std::size_t order,
                          std::map<std::string, std::size_t>& out) {
  switch (e.kind) {
    case NodeKind::call: {
      std::size_t& need = out[cache_key(e)];
      need = std::max(need, order / e.scale);
      return;
    }
    case NodeKind::extract:
      collect_requirements(e.children[0], e.scale * order + e.offset, out);
      return;
    case NodeKind::subst:
      collect_requirements(e.children[0], order / e.scale, out);
      return;
    default:
      for (const auto& c : e.children) collect_requirements(c, order, out);
  }
}

}  // namespace

std::map<std::string, std::size_t> series_requirements(const Expr& e, std::size_t order) {
  std::map<std::string, std::size_t> out;
  collect_requirements(e, order, out);
  return out;
}

Series EvalCache::get(const Expr& call, std::size_t order, Ring ring) {
  auto key = std::make_pair(cache_key(call), ring.modulus());
  auto it = entries_.find(key);
  if (it == entries_.end() || it->second.order() < order) {
    Series s = base_series(call.name, call.alpha, call.beta, order, ring);
    it = entries_.insert_or_assign(key, std::move(s)).first;
  }
  if (it->second.order() == order) return it->second;
  return truncate(it->second, order);
}

void EvalCache::warm(const std::string& name, std::size_t order, Ring ring) {
  Expr call;
  call.kind = NodeKind::call;
  call.name = name;
  call.scale = 1;
  get(call, order, ring);
}

std::string print_expr(const Expr& e) {
  std::ostringstream out;
  print_into(e, out);
  return out.str();
}

std::optional<EtaMonomial> as_eta_monomial(const Expr& e) {
  switch (e.kind) {
    case NodeKind::integer: return EtaMonomial{e.value, 0, {}};
    case NodeKind::q: return EtaMonomial{1, 1, {}};
    case NodeKind::eta:
      return EtaMonomial{1, 0, EtaQuotient{{e.scale, 1}}};
    case NodeKind::neg: {
      auto m = as_eta_monomial(e.children[0]);
      if (!m) return std::nullopt;
      m->coefficient = -m->coefficient;
      return m;
    }
    case NodeKind::mul:
    case NodeKind::div: {
      auto a = as_eta_monomial(e.children[0]);
      if (!a) return std::nullopt;
      auto b = as_eta_monomial(e.children[1]);
      if (!b) return std::nullopt;
      if (e.kind == NodeKind::div) {
        if (b->shift != 0 || (b->coefficient != 1 && b->coefficient != -1)) {
          return std::nullopt;
        }
        b->quotient = b->quotient.inverse();
      }
      EtaMonomial out;
      if (!checked_mul(a->coefficient, b->coefficient, out.coefficient)) return std::nullopt;
      out.shift = a->shift + b->shift;
      out.quotient = a->quotient * b->quotient;
      return out;
    }
    case NodeKind::pow: {
      auto m = as_eta_monomial(e.children[0]);
      if (!m) return std::nullopt;
      const long long p = e.value;
      if (p < 0 && (m->shift != 0 || (m->coefficient != 1 && m->coefficient != -1))) {
        return std::nullopt;
      }
      long long c = 1;
      const long long reps = p < 0 ? -p : p;
      if (m->coefficient == 1 || m->coefficient == -1) {
        c = (m->coefficient == -1 && reps % 2 == 1) ? -1 : 1;
      } else {
        for (long long i = 0; i < reps; ++i) {
          if (!checked_mul(c, m->coefficient, c)) return std::nullopt;
        }
      }
      if (p > 0 && m->shift > std::numeric_limits<std::size_t>::max() / p) {
        return std::nullopt;
      }
      return EtaMonomial{c, m->shift * static_cast<std::size_t>(p < 0 ? 0 : p),
                         eta_power(m->quotient, p)};
    }
    default: return std::nullopt;
  }
}

Series evaluate(const Expr& e, std::size_t order, Ring ring, EvalCache* cache) {
  if (auto m = as_eta_monomial(e)) {
    if (m->shift > order || m->coefficient == 0) return Series(ring, order);
    Series s = eta_quotient(m->quotient, order - m->shift, ring);
    if (m->coefficient != 1) s = scale(s, m->coefficient);
    return m->shift ? shift(s, m->shift) : s;
  }
  switch (e.kind) {
    case NodeKind::integer: return Series::monomial(ring, order, 0, e.value);
    case NodeKind::q: return Series::monomial(ring, order, 1, 1);
    case NodeKind::eta: return euler_product(e.scale, order, ring);
    case NodeKind::call: return named_series(e, order, ring, cache);
    case NodeKind::extract: {
      Series inner = evaluate(e.children[0], e.scale * order + e.offset, ring, cache);
      return extract(inner, e.scale, e.offset);
    }
    case NodeKind::subst: {
      Series inner = evaluate(e.children[0], order / e.scale, ring, cache);
      return substitute(inner, e.scale, e.sign, order);
    }
    default: break;
  }
  auto sub_eval = [&](std::size_t i) { return evaluate(e.children[i], order, ring, cache); };
  switch (e.kind) {
    case NodeKind::neg: return neg(sub_eval(0));
    case NodeKind::add: return add(sub_eval(0), sub_eval(1));
    case NodeKind::sub: return sub(sub_eval(0), sub_eval(1));
    case NodeKind::mul: return mul(sub_eval(0), sub_eval(1));
    case NodeKind::div: return divide(sub_eval(0), sub_eval(1));
    case NodeKind::pow: return pow(sub_eval(0), e.value);
    default: break;
  }
  throw std::logic_error("evaluate: unknown node");
}

Series evaluate(std::string_view text, std::size_t order, Ring ring) {
  return evaluate(parse_expr(text), order, ring);
}

namespace {

std::size_t find_equals(std::string_view s) {
  std::size_t at = s.find("==");
  if (at == std::string_view::npos) throw ParseError("expected '=='", s.size());
  if (s.find("==", at + 2) != std::string_view::npos) {
    throw ParseError("more than one '=='", s.find("==", at + 2));
  }
  return at;
}

Expr parse_at(std::string_view text, std::size_t base) {
  try {
    return parse_expr(text);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    msg = msg.substr(0, msg.rfind(" at offset "));
    throw ParseError(msg, base + e.offset());
  }
}

}  // namespace

IdentityLine parse_identity(std::string_view text) {
  std::string_view body = text.substr(0, std::min(text.size(), text.find('#')));
  std::size_t eq = find_equals(body);
  std::string_view rhs = body.substr(eq + 2);

  IdentityLine out;
  static const std::regex clause(R"(^([\s\S]*?)\s*\[?\s*(order|mod)\s+(\d+)\s*\]?\s*$)");
  std::string rest(rhs);
  std::smatch m;
  while (std::regex_match(rest, m, clause)) {
    const std::size_t at = eq + 2 + static_cast<std::size_t>(m.position(2));
    unsigned long long v = 0;
    try {
      v = std::stoull(m[3].str());
    } catch (const std::out_of_range&) {
      throw ParseError("number too large", at);
    }
    if (m[2] == "order") {
      if (out.order) throw ParseError("duplicate order clause", at);
      out.order = static_cast<std::size_t>(v);
    } else {
      if (out.modulus) throw ParseError("duplicate mod clause", at);
      if (v < 2 || v >= (1ull << 32)) throw ParseError("modulus must be in [2, 2^32)", at);
      out.modulus = static_cast<std::uint32_t>(v);
    }
    rest = m[1].str();
  }
  out.lhs = parse_at(body.substr(0, eq), 0);
  out.rhs = parse_at(rest, eq + 2);
  return out;
}

std::vector<IdentityLine> parse_corpus(std::string_view text) {
  std::vector<IdentityLine> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  static const std::regex tag(R"(^\s*#\s*(id|ref|section|pair):\s*(.*?)\s*$)");
  std::map<std::string, std::string> tags;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (std::regex_match(line, m, tag)) {
      tags[m[1].str()] = m[2].str();
      continue;
    }
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      IdentityLine il = parse_identity(line);
      il.tags = std::move(tags);
      tags.clear();
      if (auto it = il.tags.find("id"); it != il.tags.end()) il.id = it->second;
      il.line = lineno;
      out.push_back(std::move(il));
    } catch (const ParseError& e) {
      std::string msg = e.what();
      msg = msg.substr(0, msg.rfind(" at offset "));
      throw ParseError("line " + std::to_string(lineno) + ": " + msg, e.offset());
    }
    if (end == text.size()) break;
  }
  return out;
}

}  // namespace qlab
