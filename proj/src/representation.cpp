#include "cubesum/representation.hpp"

#include <algorithm>

#include "cubesum/errors.hpp"
#include "cubesum/poly_io.hpp"

namespace cubesum {

std::strong_ordering canonical_compare(const Polynomial& a, const Polynomial& b) {
  if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
  std::vector<std::string> vars;
  std::set_union(a.variables().begin(), a.variables().end(), b.variables().begin(),
                 b.variables().end(), std::back_inserter(vars));
  const auto ta = a.terms_over(vars);
  const auto tb = b.terms_over(vars);
  const auto n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = grlex_compare(Monomial(ta[i].first), Monomial(tb[i].first)); c != 0) return c;
    const int cc = cmp(ta[i].second, tb[i].second);
    if (cc != 0) return cc < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return ta.size() <=> tb.size();
}

Representation::Representation(Polynomial target, std::vector<Polynomial> cubes)
    : target_(std::move(target)), cubes_(std::move(cubes)) {
  std::stable_sort(cubes_.begin(), cubes_.end(), [](const Polynomial& x, const Polynomial& y) {
    return canonical_compare(x, y) < 0;
  });
}

std::vector<std::string> Representation::variables() const {
  std::vector<std::string> vars = target_.variables();
  for (const auto& c : cubes_) vars.insert(vars.end(), c.variables().begin(), c.variables().end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

Representation substitute(const Representation& r, const Bindings& bindings) {
  std::vector<Polynomial> cubes;
  cubes.reserve(r.arity());
  for (const auto& c : r.cubes()) cubes.push_back(substitute(c, bindings));
  return Representation(substitute(r.target(), bindings), std::move(cubes));
}

std::string to_text(const Representation& r) {
  std::string out;
  for (std::size_t i = 0; i < r.cubes().size(); ++i) {
    if (i != 0) out += " + ";
    out += "(" + to_text(r.cubes()[i]) + ")^3";
  }
  if (r.cubes().empty()) out = "0";
  return out + " = " + to_text(r.target());
}

std::string to_latex(const Representation& r) {
  std::string out;
  for (std::size_t i = 0; i < r.cubes().size(); ++i) {
    if (i != 0) out += " + ";
    out += "\\left(" + to_latex(r.cubes()[i]) + "\\right)^{3}";
  }
  if (r.cubes().empty()) out = "0";
  return out + " = " + to_latex(r.target());
}

nlohmann::json to_json(const Representation& r) {
  nlohmann::json cubes = nlohmann::json::array();
  for (const auto& c : r.cubes()) cubes.push_back(to_json(c));
  return {{"target", to_json(r.target())}, {"cubes", std::move(cubes)}};
}

nlohmann::json to_json(const IdentityRecord& record) {
  nlohmann::json j = to_json(record.representation);
  j["id"] = record.id;
  j["params"] = nlohmann::json::object();
  for (const auto& [k, v] : record.params) j["params"][k] = v;
  return j;
}

IdentityRecord identity_from_json(const nlohmann::json& j) {
  auto bad = [](const std::string& what) { return ParseError("identity JSON: " + what, 0, 0); };
  if (!j.is_object()) throw bad("expected an object");
  if (!j.contains("target") || !j.contains("cubes")) throw bad("missing \"target\" or \"cubes\"");
  if (!j.at("cubes").is_array()) throw bad("\"cubes\" must be an array");
  IdentityRecord out;
  if (j.contains("id")) {
    if (!j.at("id").is_string()) throw bad("\"id\" must be a string");
    out.id = j.at("id").get<std::string>();
  }
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw bad("\"params\" must be an object");
    for (const auto& [k, v] : j.at("params").items()) {
      out.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  std::vector<Polynomial> cubes;
  for (const auto& c : j.at("cubes")) cubes.push_back(polynomial_from_json(c));
  out.representation = Representation(polynomial_from_json(j.at("target")), std::move(cubes));
  return out;
}

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is the 1-based offset just past the failure point.
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON", line, column);
  }
}

}  // namespace cubesum
