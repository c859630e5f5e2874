#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cubesum/polynomial.hpp"
#include "cubesum/representation.hpp"

namespace cubesum {

/// How each cube is expanded. The two routes are independent paths through
/// the multiplication code and must always agree.
enum class ExpansionRoute { kPower, kRepeatedProduct };

struct SpotCheck {
  Point point;
  BigInt lhs;  // sum of cubes
  BigInt rhs;  // target
};

struct BadTerm {
  std::vector<std::string> variables;
  Monomial monomial;
  BigInt coefficient;
};

struct VerificationReport {
  bool ok = true;
  /// Expanded sum of cubes minus target. Absent for numeric-only reports.
  std::optional<Polynomial> residual;
  /// Graded-lex-least nonzero term of the residual.
  std::optional<BadTerm> first_bad_term;
  std::vector<SpotCheck> spot_checks;
};

Polynomial sum_of_cubes(const Representation& r, ExpansionRoute route = ExpansionRoute::kPower);

/// Symbolic check by exact expansion.
VerificationReport verify(const Representation& r, ExpansionRoute route = ExpansionRoute::kPower);

/// Numeric check at each point. Every variable of `r` must be bound;
/// throws UnboundVariable otherwise. An empty point list is vacuously ok.
VerificationReport spot_check(const Representation& r, std::span<const Point> points);

/// Grid of points with every variable in [-radius, radius], truncated to at
/// most `limit` points in lexicographic order.
std::vector<Point> grid_points(const std::vector<std::string>& variables, int radius,
                               std::size_t limit);

std::string to_text(const VerificationReport& report);
nlohmann::json to_json(const VerificationReport& report);

}  // namespace cubesum
