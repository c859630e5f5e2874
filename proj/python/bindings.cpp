#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubesum/catalog.hpp"
#include "cubesum/cli.hpp"
#include "cubesum/derivation.hpp"
#include "cubesum/errors.hpp"
#include "cubesum/poly_io.hpp"
#include "cubesum/searcher.hpp"
#include "cubesum/verifier.hpp"

namespace py = pybind11;
using namespace cubesum;

namespace {

// Python ints cross the boundary as decimal strings.
BigInt to_big(const py::int_& v) { return BigInt(py::str(v).cast<std::string>()); }

py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

// Parameters may be given as Polynomial, int or polynomial text.
Polynomial as_poly(const py::handle& h) {
  if (py::isinstance<Polynomial>(h)) return h.cast<Polynomial>();
  if (py::isinstance<py::bool_>(h)) throw py::type_error("expected int, str or Polynomial");
  if (py::isinstance<py::int_>(h)) return Polynomial::constant(to_big(h.cast<py::int_>()));
  if (py::isinstance<py::str>(h)) return parse_polynomial(h.cast<std::string>());
  throw py::type_error("expected int, str or Polynomial");
}

Bindings as_bindings(const py::dict& d) {
  Bindings b;
  for (auto [k, v] : d) b[k.cast<std::string>()] = as_poly(v);
  return b;
}

Point as_point(const py::dict& d) {
  Point p;
  for (auto [k, v] : d) p[k.cast<std::string>()] = to_big(v.cast<py::int_>());
  return p;
}

py::object json_loads(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["ok"] = r.ok;
  d["residual"] = r.residual ? py::cast(*r.residual) : py::none();
  if (r.first_bad_term) {
    const auto& b = *r.first_bad_term;
    std::vector<std::uint32_t> e(b.monomial.exponents().begin(), b.monomial.exponents().end());
    d["first_bad_term"] = Polynomial::from_terms(b.variables, {{e, b.coefficient}});
  } else {
    d["first_bad_term"] = py::none();
  }
  py::list checks;
  for (const auto& s : r.spot_checks) {
    py::dict point;
    for (const auto& [k, v] : s.point) point[py::str(k)] = to_py(v);
    checks.append(py::make_tuple(point, to_py(s.lhs), to_py(s.rhs)));
  }
  d["spot_checks"] = checks;
  return d;
}

}  // namespace

PYBIND11_MODULE(_cubesum, m) {
  m.doc() = "Exact sums of cubes of integer polynomials";

  auto base = py::register_exception<Error>(m, "CubesumError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InexactDivision>(m, "InexactDivision", base.ptr());
  py::register_exception<UnboundVariable>(m, "UnboundVariable", base.ptr());
  py::register_exception<UnknownIdentity>(m, "UnknownIdentity", base.ptr());
  py::register_exception<UnknownFamily>(m, "UnknownFamily", base.ptr());
  py::register_exception<ResidueMismatch>(m, "ResidueMismatch", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<NoFourCubeFamilyMatch>(m, "NoFourCubeFamilyMatch", base.ptr());

  py::class_<Polynomial>(m, "Polynomial")
      .def(py::init([](const py::object& v) { return as_poly(v); }), py::arg("value") = 0)
      .def_static("variable", &Polynomial::variable)
      .def_static("from_json", [](const std::string& s) { return polynomial_from_json(parse_json_text(s)); })
      .def_property_readonly("variables", &Polynomial::variables)
      .def_property_readonly("total_degree", &Polynomial::total_degree)
      .def("degree_in", &Polynomial::degree_in)
      .def("coefficient", &Polynomial::coefficient)
      .def("is_zero", &Polynomial::is_zero)
      .def("terms",
           [](const Polynomial& p) {
             py::list out;
             for (const auto& [mono, c] : p.terms()) {
               py::list e;
               for (std::size_t i = 0; i < p.variables().size(); ++i) e.append(mono[i]);
               out.append(py::make_tuple(py::tuple(e), to_py(c)));
             }
             return out;
           })
      .def("evaluate", [](const Polynomial& p, const py::dict& point) { return to_py(evaluate(p, as_point(point))); })
      .def("substitute", [](const Polynomial& p, const py::dict& b) { return substitute(p, as_bindings(b)); })
      .def("latex", [](const Polynomial& p) { return to_latex(p); })
      .def("to_json", [](const Polynomial& p) { return to_json(p).dump(); })
      .def("__str__", [](const Polynomial& p) { return to_text(p); })
      .def("__repr__", [](const Polynomial& p) { return "Polynomial('" + to_text(p) + "')"; })
      .def("__hash__", [](const Polynomial& p) { return py::hash(py::str(to_text(p))); })
      .def("__neg__", [](const Polynomial& a) { return -a; })
      .def("__add__", [](const Polynomial& a, const py::object& b) { return a + as_poly(b); })
      .def("__radd__", [](const Polynomial& a, const py::object& b) { return as_poly(b) + a; })
      .def("__sub__", [](const Polynomial& a, const py::object& b) { return a - as_poly(b); })
      .def("__rsub__", [](const Polynomial& a, const py::object& b) { return as_poly(b) - a; })
      .def("__mul__", [](const Polynomial& a, const py::object& b) { return a * as_poly(b); })
      .def("__rmul__", [](const Polynomial& a, const py::object& b) { return as_poly(b) * a; })
      .def("__pow__", [](const Polynomial& a, unsigned k) { return pow(a, k); })
      .def("__eq__", [](const Polynomial& a, const py::object& b) {
        try {
          return a == as_poly(b);
        } catch (const py::type_error&) {
          return false;
        }
      });

  py::class_<Representation>(m, "Representation")
      .def(py::init([](const py::object& target, const py::list& cubes) {
             std::vector<Polynomial> cs;
             for (auto c : cubes) cs.push_back(as_poly(c));
             return Representation(as_poly(target), std::move(cs));
           }),
           py::arg("target"), py::arg("cubes"))
      .def_static("from_json",
                  [](const std::string& s) { return identity_from_json(parse_json_text(s)).representation; })
      .def_property_readonly("target", &Representation::target)
      .def_property_readonly("cubes", &Representation::cubes)
      .def_property_readonly("arity", &Representation::arity)
      .def_property_readonly("variables", &Representation::variables)
      .def("substitute", [](const Representation& r, const py::dict& b) { return substitute(r, as_bindings(b)); })
      .def("latex", [](const Representation& r) { return to_latex(r); })
      .def("to_json", [](const Representation& r) { return to_json(r).dump(); })
      .def("__str__", [](const Representation& r) { return to_text(r); })
      .def("__repr__", [](const Representation& r) { return "<Representation " + to_text(r) + ">"; })
      .def("__len__", &Representation::arity)
      .def("__eq__", [](const Representation& a, const Representation& b) { return a == b; });

  m.def("parse", &parse_polynomial, py::arg("text"));

  m.def("verify", [](const Representation& r, bool repeated_product) {
        return report_dict(verify(r, repeated_product ? ExpansionRoute::kRepeatedProduct : ExpansionRoute::kPower));
      },
      py::arg("representation"), py::arg("repeated_product") = false);
  m.def("spot_check", [](const Representation& r, const py::list& points) {
        std::vector<Point> pts;
        for (auto p : points) pts.push_back(as_point(p.cast<py::dict>()));
        return report_dict(spot_check(r, pts));
      },
      py::arg("representation"), py::arg("points"));

  m.def("fixed_identity_ids", &fixed_identity_ids);
  m.def("family_ids", [] {
    std::vector<std::string> ids;
    for (const auto& f : identity_families()) ids.push_back(f.id);
    return ids;
  });
  m.def("describe", [](const std::string& id) { return describe_identity(id); });
  m.def("catalog_fixed", [](const std::string& id) { return catalog_fixed(id); });
  m.def("catalog_entry", [](const std::string& id, const py::dict& params) {
        return catalog_entry(id, as_bindings(params)).representation;
      },
      py::arg("id"), py::arg("params") = py::dict());
  m.def("four_cubes_sum_pq", [](const py::object& p, const py::object& q) {
        return four_cubes_sum_pq(as_poly(p), as_poly(q));
      },
      py::arg("p") = "p", py::arg("q") = "q");
  m.def("four_cubes_two_diff", [](const py::object& p, const py::object& q) {
        return four_cubes_two_diff(as_poly(p), as_poly(q));
      },
      py::arg("p") = "p", py::arg("q") = "q");
  m.def("one_bivariate", [](const py::object& a, const py::object& b) {
        return one_bivariate(as_poly(a), as_poly(b));
      },
      py::arg("m1") = "m1", py::arg("m2") = "m2");
  m.def("two_trivariate", [](const py::object& g, const py::object& h) {
        return two_trivariate(as_poly(g), as_poly(h));
      },
      py::arg("g") = "g", py::arg("h") = "h");
  m.def("five_cubes_residue", [](int j, const py::object& mm) { return five_cubes_residue(j, as_poly(mm)); },
        py::arg("j"), py::arg("m") = "m");
  m.def("scale", [](const Representation& r, const py::int_& a) { return scale_representation(r, to_big(a)); },
        py::arg("representation"), py::arg("a"));

  m.def("derive", [](const std::string& family, int j, std::optional<long long> shift) {
        const auto d = derive(family, j, shift);
        return py::make_tuple(d.result, explain(d.trace), json_loads(to_json(d.trace)));
      },
      py::arg("family"), py::arg("j") = 0, py::arg("shift") = py::none());
  m.def("derivation_families", &derivation_families);

  m.def("represent", [](const py::int_& n, unsigned cubes) {
        const BigInt value = to_big(n);
        py::gil_scoped_release release;
        return cli::represent(value, cubes).representation;
      },
      py::arg("n"), py::arg("cubes") = 5);

  m.def("search",
        [](const py::int_& target, unsigned num_cubes, unsigned max_degree, unsigned coeff_bound,
           const std::string& symmetry, std::pair<unsigned, unsigned> shard, unsigned jobs,
           std::optional<std::uint64_t> budget) {
          SearchSpace s;
          s.target = to_big(target);
          s.num_cubes = num_cubes;
          s.max_degree = max_degree;
          s.coeff_bound = coeff_bound;
          if (symmetry == "pair") {
            s.symmetry = SymmetryMode::kPairCancellation;
          } else if (symmetry != "none") {
            throw py::value_error("symmetry must be 'none' or 'pair'");
          }
          SearchOptions opts;
          if (budget) opts.budget = *budget;
          SearchResult r;
          {
            py::gil_scoped_release release;
            r = shard.second > 1 ? search_shard(s, {shard.first, shard.second}, opts)
                                 : search_parallel(s, jobs, opts);
          }
          py::list found;
          for (const auto& f : r.found) found.append(py::make_tuple(f.representation, f.degenerate));
          py::dict out;
          out["found"] = found;
          out["states_examined"] = r.states_examined;
          return out;
        },
        py::arg("target"), py::arg("num_cubes") = 4, py::arg("max_degree") = 2,
        py::arg("coeff_bound") = 1, py::arg("symmetry") = "none",
        py::arg("shard") = std::pair<unsigned, unsigned>{0, 1}, py::arg("jobs") = 1,
        py::arg("budget") = py::none());
  m.def("normalize", &normalize_representation);
}
