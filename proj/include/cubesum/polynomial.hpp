#pragma once

// Exact sparse multivariate polynomials over the integers.
//
// A Polynomial keeps its variable list sorted by name and trimmed to the
// variables that actually occur, and its terms in descending graded
// lexicographic order with no zero coefficients. Two polynomials are equal
// iff their (variables, terms) pairs are equal, so structural comparison is
// mathematical equality.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cubesum {

using BigInt = mpz_class;

/// Exponent vector, one entry per variable of the owning polynomial.
/// Comparison treats missing trailing entries as zero.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exponents)
      : exponents_(std::move(exponents)) {}

  std::span<const std::uint32_t> exponents() const noexcept { return exponents_; }
  std::size_t size() const noexcept { return exponents_.size(); }
  std::uint32_t operator[](std::size_t i) const noexcept {
    return i < exponents_.size() ? exponents_[i] : 0;
  }
  std::uint64_t total_degree() const noexcept;
  bool is_one() const noexcept { return total_degree() == 0; }

  /// True iff every exponent of `divisor` is at most the matching one here.
  bool divisible_by(const Monomial& divisor) const noexcept;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept;

 private:
  std::vector<std::uint32_t> exponents_;
};

/// Graded lexicographic comparison: total degree first, then exponent
/// vectors lexicographically.
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) noexcept;

struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return grlex_compare(a, b) > 0;
  }
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, BigInt, GrlexDescending>;
  using RawTerm = std::pair<std::vector<std::uint32_t>, BigInt>;

  /// The zero polynomial.
  Polynomial() = default;

  static Polynomial constant(const BigInt& value);
  static Polynomial variable(std::string name);
  /// Builds a polynomial from terms whose exponent vectors index into
  /// `variables`. Names must be distinct; order is arbitrary; duplicate
  /// monomials are summed.
  static Polynomial from_terms(std::vector<std::string> variables,
                               std::vector<RawTerm> terms);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return variables_.empty(); }
  BigInt constant_term() const;
  /// -1 for the zero polynomial.
  long total_degree() const noexcept;
  std::uint32_t degree_in(std::string_view var) const noexcept;
  bool contains(std::string_view var) const noexcept;

  /// Coefficient of var^power, as a polynomial in the remaining variables.
  Polynomial coefficient(std::string_view var, std::uint32_t power) const;

  /// Leading term in graded-lex order. Precondition: nonzero.
  const TermMap::value_type& leading_term() const { return *terms_.begin(); }
  /// Least term in graded-lex order. Precondition: nonzero.
  const TermMap::value_type& trailing_term() const { return *terms_.rbegin(); }

  /// Positive gcd of the coefficients; 0 for the zero polynomial.
  BigInt content() const;

  /// The same polynomial re-expressed over `superset`, which must contain
  /// every variable of this polynomial. Returned terms are not normalized.
  std::vector<RawTerm> terms_over(std::span<const std::string> superset) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  Polynomial(std::vector<std::string> variables, TermMap terms)
      : variables_(std::move(variables)), terms_(std::move(terms)) {}

  void add_scaled(const Polynomial& other, int sign);
  void normalize();

  std::vector<std::string> variables_;
  TermMap terms_;
};

Polynomial operator*(const Polynomial& a, const Polynomial& b);
bool operator==(const Polynomial& a, const Polynomial& b);

/// Square-and-multiply power; pow(a, 0) is 1.
Polynomial pow(const Polynomial& base, unsigned exponent);

/// Cube by two successive multiplications; shares no code with pow beyond
/// operator*.
Polynomial cube_by_products(const Polynomial& base);

using Bindings = std::map<std::string, Polynomial, std::less<>>;
using Point = std::map<std::string, BigInt, std::less<>>;

/// Simultaneous substitution. Unbound variables pass through.
Polynomial substitute(const Polynomial& p, const Bindings& bindings);

/// Exact value at `point`; throws UnboundVariable if a variable of `p` has
/// no value.
BigInt evaluate(const Polynomial& p, const Point& point);

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Multivariate division by leading terms in graded-lex order. Terms whose
/// monomial or coefficient is not divisible by the divisor's leading term go
/// to the remainder. Throws std::domain_error on a zero divisor.
DivisionResult divide(const Polynomial& dividend, const Polynomial& divisor);

/// Quotient of an exact division; throws InexactDivision carrying the first
/// term that could not be cancelled.
Polynomial divide_exact(const Polynomial& dividend, const Polynomial& divisor);

}  // namespace cubesum
