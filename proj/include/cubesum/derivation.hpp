#pragma once

// Re-derives each identity family from its ansatz: expand the sum of cubes,
// solve the resulting equation for one unknown by exact division, then apply
// the parametrizing substitutions. Every step is recorded so the derivation
// can be printed and replayed.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cubesum/polynomial.hpp"
#include "cubesum/representation.hpp"

namespace cubesum {

struct TraceStep {
  std::string description;
  /// Substitution applied in this step, if any.
  std::optional<std::pair<std::string, Polynomial>> substitution;
  /// Resulting equation in canonical text form.
  std::string equation;
};

struct DerivationTrace {
  /// The ansatz in terms of the unknowns, with the ansatz target.
  Representation ansatz;
  std::vector<TraceStep> steps;
  /// Parametrizing substitutions, applied in order.
  std::vector<std::pair<std::string, Polynomial>> substitutions;
  /// Final values of the solved or chosen unknowns, applied last.
  std::map<std::string, Polynomial, std::less<>> solved;
};

struct Derivation {
  Representation result;
  DerivationTrace trace;
};

/// Applies the trace's substitutions, then its solved values, to the ansatz.
Representation replay(const DerivationTrace& trace);

/// numerator / denominator, reduced by the integer content and the common
/// monomial factor, with a positive leading denominator coefficient.
struct Fraction {
  Polynomial numerator;
  Polynomial denominator;

  /// Throws InexactDivision unless the denominator divides the numerator.
  Polynomial exact() const;
};

std::string to_text(const Fraction& f);

/// Solves `equation = 0` for `unknown`. Factors of unknown^k common to all
/// terms (the trivial root) are removed first; what remains must be linear
/// in the unknown, otherwise std::domain_error is thrown.
Fraction solve_linear(const Polynomial& equation, std::string_view unknown);

Derivation derive_four_pq();
Derivation derive_four_even();
Derivation derive_one_bivariate();
Derivation derive_two_trivariate();

/// Shift used for residue j when none is given: j for 0..3, -2 for 4, -1
/// for 5.
long long default_residue_shift(int j);

/// Throws ResidueMismatch unless shift = j (mod 6); std::out_of_range
/// unless 0 <= j <= 5.
Derivation derive_five_residue(int j, long long shift);
inline Derivation derive_five_residue(int j) {
  return derive_five_residue(j, default_residue_shift(j));
}

/// Family names accepted by derive().
const std::vector<std::string>& derivation_families();

/// Dispatch by family name; `j` and `shift` are used by five_residue only.
/// Throws UnknownFamily.
Derivation derive(std::string_view family, int j = 0,
                  std::optional<long long> shift = std::nullopt);

/// Numbered steps, each with its substitution and resulting equation.
std::string explain(const DerivationTrace& trace);
nlohmann::json to_json(const DerivationTrace& trace);

}  // namespace cubesum
