#include "cubesum/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

#include "cubesum/errors.hpp"
#include "cubesum/poly_io.hpp"

namespace cubesum {

std::uint64_t Monomial::total_degree() const noexcept {
  std::uint64_t sum = 0;
  for (auto e : exponents_) sum += e;
  return sum;
}

bool Monomial::divisible_by(const Monomial& divisor) const noexcept {
  const auto n = std::max(size(), divisor.size());
  for (std::size_t i = 0; i < n; ++i) {
    if ((*this)[i] < divisor[i]) return false;
  }
  return true;
}

bool operator==(const Monomial& a, const Monomial& b) noexcept {
  const auto n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) noexcept {
  if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
  const auto n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {

std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  if (a == b) return a;
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void accumulate(Polynomial::TermMap& terms, Monomial m, const BigInt& c) {
  auto [it, inserted] = terms.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Polynomial::TermMap reindex(const Polynomial& p, std::span<const std::string> superset) {
  Polynomial::TermMap out;
  for (auto& [e, c] : p.terms_over(superset)) out.emplace(Monomial(std::move(e)), std::move(c));
  return out;
}

}  // namespace

Polynomial Polynomial::constant(const BigInt& value) {
  Polynomial p;
  if (value != 0) p.terms_.emplace(Monomial(), value);
  return p;
}

Polynomial Polynomial::variable(std::string name) {
  Polynomial p;
  p.variables_.push_back(std::move(name));
  p.terms_.emplace(Monomial({1}), BigInt(1));
  return p;
}

Polynomial Polynomial::from_terms(std::vector<std::string> variables,
                                  std::vector<RawTerm> terms) {
  // Sort variables by name and permute exponent vectors to match.
  std::vector<std::size_t> order(variables.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return variables[x] < variables[y]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (variables[order[i]] == variables[order[i - 1]]) {
      throw std::invalid_argument("duplicate variable '" + variables[order[i]] + "'");
    }
  }
  Polynomial p;
  for (auto i : order) p.variables_.push_back(variables[i]);
  for (auto& [exponents, coeff] : terms) {
    if (exponents.size() > variables.size()) {
      throw std::invalid_argument("exponent vector longer than variable list");
    }
    std::vector<std::uint32_t> e(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      e[i] = order[i] < exponents.size() ? exponents[order[i]] : 0;
    }
    accumulate(p.terms_, Monomial(std::move(e)), coeff);
  }
  p.normalize();
  return p;
}

BigInt Polynomial::constant_term() const {
  if (terms_.empty()) return 0;
  const auto& [m, c] = *terms_.rbegin();
  return m.is_one() ? c : BigInt(0);
}

long Polynomial::total_degree() const noexcept {
  if (terms_.empty()) return -1;
  return static_cast<long>(terms_.begin()->first.total_degree());
}

bool Polynomial::contains(std::string_view var) const noexcept {
  return std::binary_search(variables_.begin(), variables_.end(), var);
}

std::uint32_t Polynomial::degree_in(std::string_view var) const noexcept {
  auto it = std::lower_bound(variables_.begin(), variables_.end(), var);
  if (it == variables_.end() || *it != var) return 0;
  const auto idx = static_cast<std::size_t>(it - variables_.begin());
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[idx]);
  return d;
}

Polynomial Polynomial::coefficient(std::string_view var, std::uint32_t power) const {
  auto it = std::lower_bound(variables_.begin(), variables_.end(), var);
  if (it == variables_.end() || *it != var) {
    return power == 0 ? *this : Polynomial();
  }
  const auto idx = static_cast<std::size_t>(it - variables_.begin());
  TermMap out;
  for (const auto& [m, c] : terms_) {
    if (m[idx] != power) continue;
    std::vector<std::uint32_t> e(m.exponents().begin(), m.exponents().end());
    e[idx] = 0;
    out.emplace(Monomial(std::move(e)), c);
  }
  Polynomial p(variables_, std::move(out));
  p.normalize();
  return p;
}

BigInt Polynomial::content() const {
  BigInt g = 0;
  for (const auto& [m, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

std::vector<Polynomial::RawTerm> Polynomial::terms_over(
    std::span<const std::string> superset) const {
  std::vector<std::size_t> slot(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    auto it = std::find(superset.begin(), superset.end(), variables_[i]);
    if (it == superset.end()) {
      throw std::invalid_argument("variable '" + variables_[i] + "' missing from superset");
    }
    slot[i] = static_cast<std::size_t>(it - superset.begin());
  }
  std::vector<RawTerm> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    std::vector<std::uint32_t> e(superset.size(), 0);
    for (std::size_t i = 0; i < slot.size(); ++i) e[slot[i]] = m[i];
    out.emplace_back(std::move(e), c);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

void Polynomial::add_scaled(const Polynomial& other, int sign) {
  if (other.is_zero()) return;
  if (variables_ != other.variables_) {
    auto vars = merge_variables(variables_, other.variables_);
    terms_ = reindex(*this, vars);
    variables_ = std::move(vars);
    for (auto& [e, c] : other.terms_over(variables_)) {
      accumulate(terms_, Monomial(std::move(e)), sign > 0 ? c : BigInt(-c));
    }
  } else {
    for (const auto& [m, c] : other.terms_) {
      accumulate(terms_, m, sign > 0 ? c : BigInt(-c));
    }
  }
  normalize();
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  add_scaled(other, 1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  add_scaled(other, -1);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  auto vars = merge_variables(a.variables_, b.variables_);
  const auto lhs = a.terms_over(vars);
  const auto rhs = b.terms_over(vars);
  Polynomial::TermMap out;
  std::vector<std::uint32_t> e(vars.size());
  BigInt prod;
  for (const auto& [ea, ca] : lhs) {
    for (const auto& [eb, cb] : rhs) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      mpz_mul(prod.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      accumulate(out, Monomial(e), prod);
    }
  }
  Polynomial p(std::move(vars), std::move(out));
  p.normalize();
  return p;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.variables_ == b.variables_ && a.terms_ == b.terms_;
}

void Polynomial::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
  std::vector<bool> used(variables_.size(), false);
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (m[i] != 0) used[i] = true;
    }
  }
  if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (used[i]) vars.push_back(variables_[i]);
  }
  TermMap compact;
  for (auto& [m, c] : terms_) {
    std::vector<std::uint32_t> e;
    e.reserve(vars.size());
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (used[i]) e.push_back(m[i]);
    }
    compact.emplace(Monomial(std::move(e)), std::move(c));
  }
  variables_ = std::move(vars);
  terms_ = std::move(compact);
}

Polynomial pow(const Polynomial& base, unsigned exponent) {
  Polynomial result = Polynomial::constant(1);
  Polynomial square = base;
  while (exponent != 0) {
    if (exponent & 1u) result = result * square;
    exponent >>= 1;
    if (exponent != 0) square = square * square;
  }
  return result;
}

Polynomial cube_by_products(const Polynomial& base) {
  Polynomial acc = base;
  acc = base * acc;
  acc = base * acc;
  return acc;
}

Polynomial substitute(const Polynomial& p, const Bindings& bindings) {
  const auto& vars = p.variables();
  std::vector<const Polynomial*> image(vars.size(), nullptr);
  bool any = false;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (auto it = bindings.find(vars[i]); it != bindings.end()) {
      image[i] = &it->second;
      any = true;
    }
  }
  if (!any) return p;

  // Powers of each bound image, computed on demand.
  std::vector<std::vector<Polynomial>> powers(vars.size());
  auto power_of = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(1));
    while (cache.size() <= k) cache.push_back(cache.back() * *image[i]);
    return cache[k];
  };

  Polynomial result;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::string> free_vars;
    std::vector<std::uint32_t> free_exps;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (image[i] == nullptr && m[i] != 0) {
        free_vars.push_back(vars[i]);
        free_exps.push_back(m[i]);
      }
    }
    Polynomial term = Polynomial::from_terms(std::move(free_vars), {{std::move(free_exps), c}});
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (image[i] != nullptr && m[i] != 0) term = term * power_of(i, m[i]);
    }
    result += term;
  }
  return result;
}

BigInt evaluate(const Polynomial& p, const Point& point) {
  const auto& vars = p.variables();
  std::vector<const BigInt*> value(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = point.find(vars[i]);
    if (it == point.end()) throw UnboundVariable(vars[i]);
    value[i] = &it->second;
  }
  BigInt sum = 0;
  BigInt term;
  BigInt factor;
  for (const auto& [m, c] : p.terms()) {
    term = c;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (m[i] == 0) continue;
      mpz_pow_ui(factor.get_mpz_t(), value[i]->get_mpz_t(), m[i]);
      term *= factor;
    }
    sum += term;
  }
  return sum;
}

namespace {

// Single-term quotient of `term` by the divisor's leading term, or nullopt
// when the monomial or coefficient does not divide.
std::optional<Polynomial> divide_term(const std::vector<std::string>& vars,
                                      const Polynomial::RawTerm& term,
                                      const Polynomial::RawTerm& lead) {
  const auto& [te, tc] = term;
  const auto& [le, lc] = lead;
  if (!mpz_divisible_p(tc.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
  std::vector<std::uint32_t> e(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (te[i] < le[i]) return std::nullopt;
    e[i] = te[i] - le[i];
  }
  BigInt q;
  mpz_divexact(q.get_mpz_t(), tc.get_mpz_t(), lc.get_mpz_t());
  return Polynomial::from_terms(vars, {{std::move(e), std::move(q)}});
}

std::vector<std::string> union_vars(const Polynomial& a, const Polynomial& b) {
  std::vector<std::string> out;
  std::set_union(a.variables().begin(), a.variables().end(), b.variables().begin(),
                 b.variables().end(), std::back_inserter(out));
  return out;
}

}  // namespace

DivisionResult divide(const Polynomial& dividend, const Polynomial& divisor) {
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  const auto vars = union_vars(dividend, divisor);
  const auto lead = divisor.terms_over(vars).front();
  DivisionResult out;
  Polynomial rest = dividend;
  while (!rest.is_zero()) {
    const auto head = rest.terms_over(vars).front();
    if (auto q = divide_term(vars, head, lead)) {
      out.quotient += *q;
      rest -= *q * divisor;
    } else {
      auto moved = Polynomial::from_terms(vars, {head});
      out.remainder += moved;
      rest -= moved;
    }
  }
  return out;
}

Polynomial divide_exact(const Polynomial& dividend, const Polynomial& divisor) {
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  const auto vars = union_vars(dividend, divisor);
  const auto lead = divisor.terms_over(vars).front();
  Polynomial quotient;
  Polynomial rest = dividend;
  while (!rest.is_zero()) {
    const auto head = rest.terms_over(vars).front();
    auto q = divide_term(vars, head, lead);
    if (!q) throw InexactDivision(to_text(Polynomial::from_terms(vars, {head})));
    quotient += *q;
    rest -= *q * divisor;
  }
  return quotient;
}

}  // namespace cubesum
