#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cubesum/polynomial.hpp"

namespace cubesum {

/// Ordering used to store the cubes of a Representation: total degree, then
/// the term sequences (monomial in graded-lex order, then coefficient)
/// compared lexicographically from the leading term down.
std::strong_ordering canonical_compare(const Polynomial& a, const Polynomial& b);

/// A target together with polynomials whose cubes are claimed to sum to it.
/// The claim is not checked here; see verifier.hpp. Cubes are kept sorted by
/// canonical_compare, repeats allowed.
class Representation {
 public:
  Representation() = default;
  Representation(Polynomial target, std::vector<Polynomial> cubes);

  const Polynomial& target() const noexcept { return target_; }
  const std::vector<Polynomial>& cubes() const noexcept { return cubes_; }
  std::size_t arity() const noexcept { return cubes_.size(); }

  /// Sorted union of the variables of the target and every cube.
  std::vector<std::string> variables() const;

  friend bool operator==(const Representation&, const Representation&) = default;

 private:
  Polynomial target_;
  std::vector<Polynomial> cubes_;
};

/// Applies the same substitution to the target and every cube.
Representation substitute(const Representation& r, const Bindings& bindings);

/// A representation tagged with the catalog id and parameter values it was
/// built from. Parameters are stored in polynomial text form.
struct IdentityRecord {
  std::string id;
  std::map<std::string, std::string, std::less<>> params;
  Representation representation;
};

std::string to_text(const Representation& r);
std::string to_latex(const Representation& r);

nlohmann::json to_json(const Representation& r);
nlohmann::json to_json(const IdentityRecord& record);

/// Accepts {"target": ..., "cubes": [...]} with optional "id" and "params".
/// Throws ParseError on a schema violation.
IdentityRecord identity_from_json(const nlohmann::json& j);

/// Parses JSON text, mapping syntax errors to ParseError with line/column.
nlohmann::json parse_json_text(const std::string& text);

}  // namespace cubesum
