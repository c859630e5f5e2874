#include "cubesum/catalog.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "cubesum/errors.hpp"
#include "cubesum/poly_io.hpp"

namespace cubesum {

namespace {

struct FixedIdentity {
  const char* id;
  const char* description;
  const char* target;
  std::vector<const char*> cubes;
};

// Transcribed from the published displays.
const std::vector<FixedIdentity>& fixed_table() {
  static const std::vector<FixedIdentity> table = {
      {"mahler", "Mahler: 1 as three cubes of polynomials in t", "1",
       {"9*t^4", "3*t - 9*t^4", "1 - 9*t^3"}},
      {"one_cubic", "1 as four cubes of cubics in t", "1",
       {"8*t^3 - 2*t^2 - 4*t + 1", "8*t^3 - 6*t^2 - 3*t + 2", "-8*t^3 + 2*t^2 + 3*t",
        "-8*t^3 + 6*t^2 + 4*t - 2"}},
      {"one_deg6", "1 as four cubes of polynomials of degree up to 6 in t", "1",
       {"3*t^6 + 3*t^3 + 1", "-3*t^3*(t^3 + 1)", "-3*t^4 - 2*t", "-t"}},
      {"one_quadratic", "1 as four cubes of quadratics in t", "1",
       {"2*t^2", "2*t^2 - 1", "-2*t^2 - t + 1", "-2*t^2 + t + 1"}},
      {"two_cubic_18", "2 as four cubes, leading coefficients 18 and -18", "2",
       {"18*t^3 + 1", "-18*t^3 + 1", "-6*t^2", "-12*t^2"}},
      {"two_cubic_3", "2 as four cubes, leading coefficients 3 and -3", "2",
       {"3*t^3 + 1", "-3*t^3 + 1", "-3*t^2", "-3*t^2"}},
      {"two_quadratic", "2 as four cubes of quadratics in t", "2",
       {"t^2", "t^2", "-t^2 + t + 1", "-t^2 - t + 1"}},
      {"werebrusow", "Werebrusow: 2 as three cubes of polynomials in t", "2",
       {"1 + 6*t^3", "1 - 6*t^3", "-6*t^2"}},
  };
  return table;
}

constexpr std::string_view kBivariateSystemId = "one_bivariate_system";

Representation from_text(const char* target, const std::vector<const char*>& cubes) {
  std::vector<Polynomial> polys;
  polys.reserve(cubes.size());
  for (const char* c : cubes) polys.push_back(parse_polynomial(c));
  return Representation(parse_polynomial(target), std::move(polys));
}

struct ResidueRow {
  const char* first;
  const char* second;
  const char* doubled;
  const char* last;
};

// 6m + j = first^3 + second^3 + 2*doubled^3 + last^3.
constexpr std::array<ResidueRow, 6> kResidueRows = {{
    {"36*t^3 + m + 1", "36*t^3 + m - 1", "-36*t^3 - m", "-6*t"},
    {"36*t^3 - 18*t^2 + 3*t + m + 1", "36*t^3 - 18*t^2 + 3*t + m - 1",
     "-36*t^3 + 18*t^2 - 3*t - m", "-6*t + 1"},
    {"36*t^3 - 36*t^2 + 12*t + m", "36*t^3 - 36*t^2 + 12*t + m - 2",
     "-36*t^3 + 36*t^2 - 12*t - m + 1", "-6*t + 2"},
    {"36*t^3 - 54*t^2 + 27*t + m - 3", "36*t^3 - 54*t^2 + 27*t + m - 5",
     "-36*t^3 + 54*t^2 - 27*t - m + 4", "-6*t + 3"},
    {"36*t^3 + 36*t^2 + 12*t + m + 3", "36*t^3 + 36*t^2 + 12*t + m + 1",
     "-36*t^3 - 36*t^2 - 12*t - m - 2", "-6*t - 2"},
    {"36*t^3 + 18*t^2 + 3*t + m + 2", "36*t^3 + 18*t^2 + 3*t + m",
     "-36*t^3 - 18*t^2 - 3*t - m - 1", "-6*t - 1"},
}};

}  // namespace

const std::vector<IdentityFamily>& identity_families() {
  static const std::vector<IdentityFamily> families = {
      {"five_residue", 5, {"m"}, {"t"},
       "6m + j (j = 0..5) as five cubes of polynomials in t and m"},
      {"four_even", 4, {"p", "q"}, {"t"}, "2(p^6 - q^6) as four cubes of linear polynomials in t"},
      {"four_pq", 4, {"p", "q"}, {"t"}, "p^3 + q^3 as four cubes of quadratics in t"},
      {"one_bivariate", 4, {"m1", "m2"}, {}, "1 as four cubes of polynomials in m1, m2"},
      {"two_trivariate", 4, {"g", "h"}, {"t"}, "2 as four cubes of polynomials in t, g, h"},
  };
  return families;
}

const std::vector<std::string>& fixed_identity_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& f : fixed_table()) out.emplace_back(f.id);
    out.emplace_back(kBivariateSystemId);
    std::sort(out.begin(), out.end());
    return out;
  }();
  return ids;
}

std::string describe_identity(std::string_view id) {
  for (const auto& f : fixed_table()) {
    if (f.id == id) return f.description;
  }
  if (id == kBivariateSystemId) return "1 as four cubes of polynomials in m1, m2 (symbolic)";
  for (const auto& f : identity_families()) {
    if (f.id == id) return f.description;
  }
  throw UnknownIdentity(std::string(id));
}

Representation four_cubes_sum_pq(const Polynomial& p, const Polynomial& q) {
  static const Representation symbolic = from_text(
      "p^3 + q^3", {"2*(p + q)*t^2 + 4*q*t + q", "2*(p + q)*t^2 + 4*q*t - p + 2*q",
                    "-2*(p + q)*t^2 + (p - 3*q)*t + p", "-2*(p + q)*t^2 - (p + 5*q)*t + p - 2*q"});
  return substitute(symbolic, Bindings{{"p", p}, {"q", q}});
}

Representation four_cubes_two_diff(const Polynomial& p, const Polynomial& q) {
  static const Representation symbolic = from_text(
      "2*(p^6 - q^6)", {"p*t - q^2", "-p*t - q^2", "q*t + p^2", "-q*t + p^2"});
  return substitute(symbolic, Bindings{{"p", p}, {"q", q}});
}

Representation one_bivariate(const Polynomial& m1, const Polynomial& m2) {
  static const Representation symbolic = from_text(
      "1", {"2*(2*m2^2 - 1)^2*m1^2 + 4*m2*(2*m2^2 - 1)*m1 + 2*m2^2",
            "-2*(2*m2^2 - 1)^2*m1^2 - (4*m2 - 1)*(2*m2^2 - 1)*m1 - (2*m2 + 1)*(m2 - 1)",
            "-2*(2*m2^2 - 1)^2*m1^2 - (4*m2 + 1)*(2*m2^2 - 1)*m1 - (m2 + 1)*(2*m2 - 1)",
            "2*(2*m2^2 - 1)^2*m1^2 + 4*m2*(2*m2^2 - 1)*m1 + 2*m2^2 - 1"});
  return substitute(symbolic, Bindings{{"m1", m1}, {"m2", m2}});
}

Representation two_trivariate(const Polynomial& g, const Polynomial& h) {
  static const Representation symbolic = from_text(
      "2", {"6*t^3*(g^3 + h^3)^2 + 1", "-6*t^3*(g^3 + h^3)^2 + 1", "-6*g*t^2*(g^3 + h^3)",
            "-6*h*t^2*(g^3 + h^3)"});
  return substitute(symbolic, Bindings{{"g", g}, {"h", h}});
}

Representation five_cubes_residue(int j, const Polynomial& m) {
  if (j < 0 || j > 5) throw std::out_of_range("residue must be in 0..5");
  const auto& row = kResidueRows[static_cast<std::size_t>(j)];
  const Representation symbolic = from_text(
      ("6*m + " + std::to_string(j)).c_str(), {row.first, row.second, row.doubled, row.doubled, row.last});
  return substitute(symbolic, Bindings{{"m", m}});
}

Representation catalog_fixed(std::string_view id) {
  for (const auto& f : fixed_table()) {
    if (f.id == id) return from_text(f.target, f.cubes);
  }
  if (id == kBivariateSystemId) {
    return one_bivariate(Polynomial::variable("m1"), Polynomial::variable("m2"));
  }
  throw UnknownIdentity(std::string(id));
}

Representation scale_representation(const Representation& r, const BigInt& a) {
  const Polynomial factor = Polynomial::constant(a);
  std::vector<Polynomial> cubes;
  cubes.reserve(r.arity());
  for (const auto& c : r.cubes()) cubes.push_back(c * factor);
  return Representation(r.target() * pow(factor, 3), std::move(cubes));
}

IdentityRecord catalog_entry(std::string_view id, const Bindings& params) {
  IdentityRecord record;
  record.id = std::string(id);
  const auto family = std::find_if(identity_families().begin(), identity_families().end(),
                                   [&](const IdentityFamily& f) { return f.id == id; });
  if (family == identity_families().end()) {
    record.representation = catalog_fixed(id);
    return record;
  }
  auto param = [&](const std::string& name) {
    auto it = params.find(name);
    Polynomial value = it == params.end() ? Polynomial::variable(name) : it->second;
    record.params[name] = to_text(value);
    return value;
  };
  if (id == "four_pq") {
    auto p = param("p");
    record.representation = four_cubes_sum_pq(p, param("q"));
  } else if (id == "four_even") {
    auto p = param("p");
    record.representation = four_cubes_two_diff(p, param("q"));
  } else if (id == "one_bivariate") {
    auto m1 = param("m1");
    record.representation = one_bivariate(m1, param("m2"));
  } else if (id == "two_trivariate") {
    auto g = param("g");
    record.representation = two_trivariate(g, param("h"));
  } else {
    int j = 0;
    if (auto it = params.find("j"); it != params.end()) {
      if (!it->second.is_constant() || !it->second.constant_term().fits_sint_p()) {
        throw std::invalid_argument("five_residue needs an integer j");
      }
      j = static_cast<int>(it->second.constant_term().get_si());
    }
    record.params["j"] = std::to_string(j);
    record.representation = five_cubes_residue(j, param("m"));
  }
  return record;
}

}  // namespace cubesum
