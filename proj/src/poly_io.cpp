#include "cubesum/poly_io.hpp"

#include <cctype>
#include <limits>

#include "cubesum/errors.hpp"

namespace cubesum {

namespace {

std::string monomial_text(const std::vector<std::string>& vars, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

// "m12" -> "m_{12}"; names without a trailing digit run are unchanged.
std::string latex_name(const std::string& name) {
  auto pos = name.find_last_not_of("0123456789");
  if (pos == std::string::npos || pos + 1 == name.size()) return name;
  return name.substr(0, pos + 1) + "_{" + name.substr(pos + 1) + "}";
}

std::string monomial_latex(const std::vector<std::string>& vars, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += latex_name(vars[i]);
    if (m[i] > 1) out += "^{" + std::to_string(m[i]) + "}";
  }
  return out;
}

template <typename MonomialFormatter>
std::string render(const Polynomial& p, MonomialFormatter&& fmt, const char* times) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const BigInt magnitude = abs(c);
    if (m.is_one()) {
      out += magnitude.get_str();
    } else if (magnitude == 1) {
      out += fmt(p.variables(), m);
    } else {
      out += magnitude.get_str() + times + fmt(p.variables(), m);
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, 1, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    Polynomial acc = product();
    while (true) {
      if (accept('+')) {
        acc += product();
      } else if (accept('-')) {
        acc -= product();
      } else {
        return acc;
      }
    }
  }

  Polynomial product() {
    Polynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (!accept('^')) return base;
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    const BigInt e(std::string(text_.substr(start, pos_ - start)));
    if (e > std::numeric_limits<unsigned>::max()) fail("exponent too large");
    return pow(base, static_cast<unsigned>(e.get_ui()));
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const auto start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial::constant(BigInt(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return Polynomial::variable(std::string(text_.substr(start, pos_ - start)));
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_text(const Polynomial& p) { return render(p, monomial_text, "*"); }

std::string to_latex(const Polynomial& p) { return render(p, monomial_latex, " "); }

Polynomial parse_polynomial(std::string_view text) { return Parser(text).parse(); }

nlohmann::json to_json(const Polynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json e = nlohmann::json::array();
    for (std::size_t i = 0; i < p.variables().size(); ++i) e.push_back(m[i]);
    terms.push_back({{"e", std::move(e)}, {"c", c.get_str()}});
  }
  return {{"vars", p.variables()}, {"terms", std::move(terms)}};
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
  auto bad = [](const std::string& what) { return ParseError("polynomial JSON: " + what, 0, 0); };
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms")) {
    throw bad("expected an object with \"vars\" and \"terms\"");
  }
  const auto& jv = j.at("vars");
  const auto& jt = j.at("terms");
  if (!jv.is_array() || !jt.is_array()) throw bad("\"vars\" and \"terms\" must be arrays");
  std::vector<std::string> vars;
  for (const auto& v : jv) {
    if (!v.is_string()) throw bad("variable names must be strings");
    vars.push_back(v.get<std::string>());
  }
  std::vector<Polynomial::RawTerm> terms;
  for (const auto& t : jt) {
    if (!t.is_object() || !t.contains("e") || !t.contains("c")) {
      throw bad("each term needs \"e\" and \"c\"");
    }
    const auto& je = t.at("e");
    if (!je.is_array() || je.size() > vars.size()) throw bad("bad exponent vector");
    std::vector<std::uint32_t> e;
    for (const auto& x : je) {
      if (!x.is_number_unsigned()) throw bad("exponents must be non-negative integers");
      e.push_back(x.get<std::uint32_t>());
    }
    const auto& jc = t.at("c");
    BigInt c;
    if (jc.is_string()) {
      if (c.set_str(jc.get<std::string>(), 10) != 0) throw bad("bad coefficient");
    } else if (jc.is_number_integer()) {
      c = BigInt(jc.dump());
    } else {
      throw bad("coefficients must be decimal strings");
    }
    terms.emplace_back(std::move(e), std::move(c));
  }
  try {
    return Polynomial::from_terms(std::move(vars), std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw bad(e.what());
  }
}

}  // namespace cubesum
