#include "cubesum/verifier.hpp"

#include "cubesum/poly_io.hpp"

namespace cubesum {

Polynomial sum_of_cubes(const Representation& r, ExpansionRoute route) {
  Polynomial sum;
  for (const auto& c : r.cubes()) {
    sum += route == ExpansionRoute::kPower ? pow(c, 3) : cube_by_products(c);
  }
  return sum;
}

VerificationReport verify(const Representation& r, ExpansionRoute route) {
  VerificationReport report;
  Polynomial residual = sum_of_cubes(r, route) - r.target();
  report.ok = residual.is_zero();
  if (!report.ok) {
    const auto& [m, c] = residual.trailing_term();
    report.first_bad_term = BadTerm{residual.variables(), m, c};
  }
  report.residual = std::move(residual);
  return report;
}

VerificationReport spot_check(const Representation& r, std::span<const Point> points) {
  VerificationReport report;
  for (const auto& point : points) {
    BigInt lhs = 0;
    BigInt value;
    for (const auto& c : r.cubes()) {
      value = evaluate(c, point);
      lhs += value * value * value;
    }
    BigInt rhs = evaluate(r.target(), point);
    if (lhs != rhs) report.ok = false;
    report.spot_checks.push_back({point, std::move(lhs), std::move(rhs)});
  }
  return report;
}

std::vector<Point> grid_points(const std::vector<std::string>& variables, int radius,
                               std::size_t limit) {
  std::vector<Point> out;
  if (limit == 0) return out;
  std::vector<int> digits(variables.size(), -radius);
  while (out.size() < limit) {
    Point p;
    for (std::size_t i = 0; i < variables.size(); ++i) p[variables[i]] = digits[i];
    out.push_back(std::move(p));
    std::size_t i = variables.size();
    while (i > 0 && digits[i - 1] == radius) digits[--i] = -radius;
    if (i == 0) break;
    ++digits[i - 1];
  }
  return out;
}

namespace {

std::string point_text(const Point& p) {
  std::string out;
  for (const auto& [k, v] : p) {
    if (!out.empty()) out += ", ";
    out += k + "=" + v.get_str();
  }
  return out.empty() ? "()" : out;
}

}  // namespace

std::string to_text(const VerificationReport& report) {
  std::string out = report.ok ? "ok" : "FAILED";
  if (report.residual) out += "\nresidual: " + to_text(*report.residual);
  if (report.first_bad_term) {
    const auto& bad = *report.first_bad_term;
    out += "\nfirst bad term: " +
           to_text(Polynomial::from_terms(bad.variables,
                                          {{{bad.monomial.exponents().begin(),
                                             bad.monomial.exponents().end()},
                                            bad.coefficient}}));
  }
  std::size_t mismatches = 0;
  for (const auto& s : report.spot_checks) {
    if (s.lhs != s.rhs) {
      ++mismatches;
      out += "\nmismatch at " + point_text(s.point) + ": " + s.lhs.get_str() +
             " != " + s.rhs.get_str();
    }
  }
  if (!report.spot_checks.empty()) {
    out += "\nspot checks: " + std::to_string(report.spot_checks.size() - mismatches) + "/" +
           std::to_string(report.spot_checks.size()) + " agree";
  }
  return out;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["ok"] = report.ok;
  j["residual"] = report.residual ? to_json(*report.residual) : nlohmann::json(nullptr);
  if (report.first_bad_term) {
    const auto& bad = *report.first_bad_term;
    j["first_bad_term"] = {{"vars", bad.variables},
                           {"e", std::vector<std::uint32_t>(bad.monomial.exponents().begin(),
                                                            bad.monomial.exponents().end())},
                           {"c", bad.coefficient.get_str()}};
  } else {
    j["first_bad_term"] = nullptr;
  }
  j["spot_checks"] = nlohmann::json::array();
  for (const auto& s : report.spot_checks) {
    nlohmann::json point = nlohmann::json::object();
    for (const auto& [k, v] : s.point) point[k] = v.get_str();
    j["spot_checks"].push_back({{"point", point}, {"lhs", s.lhs.get_str()}, {"rhs", s.rhs.get_str()}});
  }
  return j;
}

}  // namespace cubesum
