#include "cubesum/derivation.hpp"

#include <algorithm>
#include <stdexcept>

#include "cubesum/errors.hpp"
#include "cubesum/poly_io.hpp"

namespace cubesum {

namespace {

Polynomial P(std::string_view text) { return parse_polynomial(text); }

// Cubes in ansatz order, unlike to_text(Representation) which prints them
// canonically sorted.
std::string sum_text(const std::vector<Polynomial>& cubes, const Polynomial& target) {
  std::string out;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    if (i != 0) out += " + ";
    out += "(" + to_text(cubes[i]) + ")^3";
  }
  return out + " = " + to_text(target);
}

std::string binding_text(const std::string& var, const Polynomial& value) {
  return var + " = " + to_text(value);
}

Polynomial sum_cubes(const std::vector<Polynomial>& cubes) {
  Polynomial s;
  for (const auto& c : cubes) s += pow(c, 3);
  return s;
}

// Divides every term by the monomial common to all of them.
Polynomial strip_monomial(const Polynomial& p, const Monomial& factor,
                          const std::vector<std::string>& vars) {
  std::vector<Polynomial::RawTerm> terms = p.terms_over(vars);
  for (auto& [e, c] : terms) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= factor[i];
  }
  return Polynomial::from_terms(vars, std::move(terms));
}

class TraceBuilder {
 public:
  TraceBuilder(std::vector<Polynomial> ansatz_cubes, Polynomial ansatz_target)
      : cubes_(std::move(ansatz_cubes)), target_(std::move(ansatz_target)) {
    trace_.ansatz = Representation(target_, cubes_);
  }

  const std::vector<Polynomial>& ansatz_cubes() const { return cubes_; }
  const Polynomial& ansatz_target() const { return target_; }

  void step(std::string description, std::string equation) {
    trace_.steps.push_back({std::move(description), std::nullopt, std::move(equation)});
  }

  void substitution_step(std::string description, const std::string& var,
                         const Polynomial& value, std::string equation) {
    trace_.steps.push_back({std::move(description), std::make_pair(var, value), std::move(equation)});
  }

  void record_substitution(const std::string& var, const Polynomial& value) {
    trace_.substitutions.emplace_back(var, value);
  }

  void record_solved(const std::string& var, const Polynomial& value) {
    trace_.solved[var] = value;
  }

  Derivation finish() {
    Derivation d;
    d.result = replay(trace_);
    d.trace = std::move(trace_);
    return d;
  }

 private:
  std::vector<Polynomial> cubes_;
  Polynomial target_;
  DerivationTrace trace_;
};

void require_zero(const Polynomial& p, const std::string& what) {
  if (!p.is_zero()) throw std::logic_error(what + " is " + to_text(p) + ", expected 0");
}

}  // namespace

Representation replay(const DerivationTrace& trace) {
  Representation r = trace.ansatz;
  for (const auto& [var, value] : trace.substitutions) r = substitute(r, Bindings{{var, value}});
  return substitute(r, trace.solved);
}

Polynomial Fraction::exact() const { return divide_exact(numerator, denominator); }

std::string to_text(const Fraction& f) {
  if (f.denominator == Polynomial::constant(1)) return to_text(f.numerator);
  auto wrap = [](const Polynomial& p) {
    return p.term_count() == 1 && p.leading_term().second > 0 ? to_text(p) : "(" + to_text(p) + ")";
  };
  return wrap(f.numerator) + "/" + wrap(f.denominator);
}

Fraction solve_linear(const Polynomial& equation, std::string_view unknown) {
  const auto degree = equation.degree_in(unknown);
  std::uint32_t low = 0;
  while (low <= degree && equation.coefficient(unknown, low).is_zero()) ++low;
  if (low > degree) throw std::domain_error("equation vanishes identically");
  if (degree != low + 1) {
    throw std::domain_error("equation is not linear in " + std::string(unknown) +
                            " after removing the trivial root");
  }
  Fraction f{-equation.coefficient(unknown, low), equation.coefficient(unknown, low + 1)};

  BigInt g;
  mpz_gcd(g.get_mpz_t(), f.numerator.content().get_mpz_t(), f.denominator.content().get_mpz_t());
  if (g > 1) {
    const auto d = Polynomial::constant(g);
    f.numerator = divide_exact(f.numerator, d);
    f.denominator = divide_exact(f.denominator, d);
  }

  if (!f.numerator.is_zero()) {
    std::vector<std::string> vars;
    std::set_union(f.numerator.variables().begin(), f.numerator.variables().end(),
                   f.denominator.variables().begin(), f.denominator.variables().end(),
                   std::back_inserter(vars));
    std::vector<std::uint32_t> common(vars.size(), UINT32_MAX);
    for (const auto* poly : {&f.numerator, &f.denominator}) {
      for (const auto& [e, c] : poly->terms_over(vars)) {
        for (std::size_t i = 0; i < vars.size(); ++i) common[i] = std::min(common[i], e[i]);
      }
    }
    const Monomial factor(std::move(common));
    if (!factor.is_one()) {
      f.numerator = strip_monomial(f.numerator, factor, vars);
      f.denominator = strip_monomial(f.denominator, factor, vars);
    }
  }

  if (f.denominator.leading_term().second < 0) {
    f.numerator = -f.numerator;
    f.denominator = -f.denominator;
  }
  return f;
}

Derivation derive_four_pq() {
  TraceBuilder tb({P("-y + p"), P("-y + q"), P("y + m"), P("y - m")}, P("p^3 + q^3"));
  tb.step("Ansatz x1 = -y + p, x2 = -y + q, x3 = y + m, x4 = y - m",
          sum_text(tb.ansatz_cubes(), tb.ansatz_target()));

  const Polynomial equation = sum_cubes(tb.ansatz_cubes()) - tb.ansatz_target();
  tb.step("Expand; the y^3 and constant terms cancel", to_text(equation) + " = 0");

  const Fraction y = solve_linear(equation, "y");
  tb.step("Drop the root y = 0 and solve the linear remainder for y", "y = " + to_text(y));

  const Polynomial m = P("(p + q)*t + q");
  const Polynomial y_value = divide_exact(substitute(y.numerator, {{"m", m}}), y.denominator);
  tb.substitution_step("Parametrize m; the division by p + q becomes exact", "m", m,
                       binding_text("y", y_value));
  tb.record_substitution("m", m);
  tb.record_solved("y", y_value);

  Derivation d = tb.finish();
  d.trace.steps.push_back({"Substitute m and y into the ansatz", std::nullopt, to_text(d.result)});
  return d;
}

Derivation derive_four_even() {
  TraceBuilder tb({P("p*t + u"), P("-p*t + u"), P("q*t + v"), P("-q*t + v")}, P("2*u^3 + 2*v^3"));
  const Polynomial sum = sum_cubes(tb.ansatz_cubes());
  tb.step("Treat (p*t + u)^3 + (-p*t + u)^3 + (q*t + v)^3 + (-q*t + v)^3 as a cubic in t",
          "S = " + to_text(sum));

  const Polynomial c3 = sum.coefficient("t", 3);
  const Polynomial c1 = sum.coefficient("t", 1);
  require_zero(c3, "coefficient of t^3");
  require_zero(c1, "coefficient of t");
  tb.step("The coefficients of t^3 and t vanish identically",
          "[t^3] S = " + to_text(c3) + ", [t^1] S = " + to_text(c1));

  const Polynomial c2 = sum.coefficient("t", 2);
  tb.step("Coefficient of t^2", to_text(c2) + " = 0");

  const Polynomial u = P("-q^2");
  const Polynomial v = P("p^2");
  const Bindings choice{{"u", u}, {"v", v}};
  const Polynomial c2_after = substitute(c2, choice);
  require_zero(c2_after, "coefficient of t^2 after choosing u, v");
  tb.substitution_step("Choose u so the t^2 coefficient vanishes", "u", u, binding_text("u", u));
  tb.substitution_step("Choose v so the t^2 coefficient vanishes", "v", v,
                       "[t^2] S = " + to_text(c2_after));
  tb.record_solved("u", u);
  tb.record_solved("v", v);

  const Polynomial constant = substitute(sum.coefficient("t", 0), choice);
  tb.step("The polynomial reduces to its constant term", "S = " + to_text(constant));

  Derivation d = tb.finish();
  d.trace.steps.push_back({"Resulting identity", std::nullopt, to_text(d.result)});
  return d;
}

Derivation derive_one_bivariate() {
  TraceBuilder tb({P("p*y + 1"), P("-p*y + m"), P("-p*y - m"), P("p*y")}, P("1"));
  tb.step("Ansatz x1 = p*y + 1, x2 = -p*y + m, x3 = -p*y - m, x4 = p*y",
          sum_text(tb.ansatz_cubes(), tb.ansatz_target()));

  const Polynomial equation = sum_cubes(tb.ansatz_cubes()) - tb.ansatz_target();
  tb.step("Expand", to_text(equation) + " = 0");

  const Fraction y = solve_linear(equation, "y");
  tb.step("Drop the root y = 0 and solve for y", "y = " + to_text(y));

  const Polynomial m = P("p*m1 + m2");
  const Polynomial numerator = substitute(y.numerator, {{"m", m}});
  const DivisionResult split = divide(numerator, y.denominator);
  tb.substitution_step("Write m = p*m1 + m2 and split off the polynomial part", "m", m,
                       "y = " + to_text(split.quotient) + " + " +
                           to_text(Fraction{split.remainder, y.denominator}));
  tb.record_substitution("m", m);

  const Polynomial p = P("2*m2^2 - 1");
  const Polynomial y_value =
      divide_exact(substitute(numerator, {{"p", p}}), substitute(y.denominator, {{"p", p}}));
  tb.substitution_step("Take p equal to the numerator of the fractional part", "p", p,
                       binding_text("y", y_value));
  tb.record_substitution("p", p);
  tb.record_solved("y", y_value);

  Derivation d = tb.finish();
  d.trace.steps.push_back({"Substitute m, p and y into the ansatz", std::nullopt, to_text(d.result)});
  return d;
}

Derivation derive_two_trivariate() {
  TraceBuilder tb({P("p + 1"), P("-p + 1"), P("q"), P("r")}, P("2"));
  tb.step("Ansatz", sum_text(tb.ansatz_cubes(), tb.ansatz_target()));

  const Polynomial reduced = sum_cubes(tb.ansatz_cubes()) - tb.ansatz_target();
  tb.step("Expand; (p + 1)^3 + (-p + 1)^3 - 2 = 6*p^2", to_text(reduced) + " = 0");

  const Polynomial f_m = P("f*m");
  const Polynomial g_m = P("g*m");
  const Polynomial h_m = P("h*m");
  const Polynomial scaled = substitute(reduced, {{"p", f_m}, {"q", g_m}, {"r", h_m}});
  tb.substitution_step("Write p = f*m", "p", f_m, binding_text("p", f_m));
  tb.substitution_step("Write q = g*m", "q", g_m, binding_text("q", g_m));
  tb.substitution_step("Write r = h*m", "r", h_m, to_text(scaled) + " = 0");
  tb.record_substitution("p", f_m);
  tb.record_substitution("q", g_m);
  tb.record_substitution("r", h_m);

  const Fraction m = solve_linear(scaled, "m");
  tb.step("Drop the root m = 0 and solve for m", "m = " + to_text(m));

  const Polynomial f = P("t*(g^3 + h^3)");
  const Polynomial m_value = divide_exact(substitute(m.numerator, {{"f", f}}), m.denominator);
  tb.substitution_step("Take f = t*(g^3 + h^3) so the division is exact", "f", f,
                       binding_text("m", m_value));
  tb.record_substitution("f", f);
  tb.record_solved("m", m_value);

  Derivation d = tb.finish();
  d.trace.steps.push_back({"Substitute into the ansatz", std::nullopt, to_text(d.result)});
  return d;
}

long long default_residue_shift(int j) {
  if (j < 0 || j > 5) throw std::out_of_range("residue must be in 0..5");
  return j == 4 ? -2 : j == 5 ? -1 : j;
}

Derivation derive_five_residue(int j, long long shift) {
  if (j < 0 || j > 5) throw std::out_of_range("residue must be in 0..5");
  if (((shift - j) % 6 + 6) % 6 != 0) throw ResidueMismatch(j, shift);

  const Polynomial last = P("-6*t") + Polynomial::constant(BigInt(static_cast<long>(shift)));
  const Polynomial target = P("6*m") + Polynomial::constant(j);
  TraceBuilder tb({P("r + 1"), P("r - 1"), P("-r"), P("-r"), last}, target);

  const Polynomial base = sum_cubes({P("r + 1"), P("r - 1")}) - pow(P("r"), 3) * P("2");
  require_zero(base - P("6*r"), "(r + 1)^3 + (r - 1)^3 - 2*r^3 - 6*r");
  tb.step("Base identity", "(r + 1)^3 + (r - 1)^3 + (-r)^3 + (-r)^3 = " + to_text(base));

  const Polynomial lhs = P("6*r") + pow(last, 3);
  tb.step("Add (" + to_text(last) + ")^3 to both sides and equate to 6*m + " + std::to_string(j),
          to_text(lhs) + " = " + to_text(target));

  const Fraction r = solve_linear(lhs - target, "r");
  Polynomial r0;
  try {
    r0 = r.exact();
  } catch (const InexactDivision&) {
    throw ResidueMismatch(j, shift);
  }
  tb.step("Solve for r; the division by 6 is exact since j^3 = j (mod 6)", binding_text("r", r0));
  tb.record_solved("r", r0);

  Derivation d = tb.finish();
  d.trace.steps.push_back({"Substitute r", std::nullopt, to_text(d.result)});
  return d;
}

const std::vector<std::string>& derivation_families() {
  static const std::vector<std::string> names = {"five_residue", "four_even", "four_pq",
                                                 "one_bivariate", "two_trivariate"};
  return names;
}

Derivation derive(std::string_view family, int j, std::optional<long long> shift) {
  if (family == "four_pq") return derive_four_pq();
  if (family == "four_even") return derive_four_even();
  if (family == "one_bivariate") return derive_one_bivariate();
  if (family == "two_trivariate") return derive_two_trivariate();
  if (family == "five_residue") return derive_five_residue(j, shift.value_or(default_residue_shift(j)));
  throw UnknownFamily(std::string(family));
}

std::string explain(const DerivationTrace& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    out += std::to_string(i + 1) + ". " + s.description + "\n";
    if (s.substitution) {
      out += "   substitute " + s.substitution->first + " := " + to_text(s.substitution->second) + "\n";
    }
    out += "   " + s.equation + "\n";
  }
  return out;
}

nlohmann::json to_json(const DerivationTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : trace.steps) {
    nlohmann::json js = {{"description", s.description}, {"equation", s.equation}};
    if (s.substitution) {
      js["substitution"] = {{"var", s.substitution->first}, {"value", to_text(s.substitution->second)}};
    }
    steps.push_back(std::move(js));
  }
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& [var, value] : trace.substitutions) {
    subs.push_back({{"var", var}, {"value", to_json(value)}});
  }
  nlohmann::json solved = nlohmann::json::object();
  for (const auto& [var, value] : trace.solved) solved[var] = to_json(value);
  return {{"ansatz", to_json(trace.ansatz)},
          {"steps", std::move(steps)},
          {"substitutions", std::move(subs)},
          {"solved", std::move(solved)}};
}

}  // namespace cubesum
