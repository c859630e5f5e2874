#pragma once

// Constructors for the known sum-of-cubes identities.
//
// Parameters are polynomials: pass Polynomial::variable("p") to keep a
// parameter symbolic, or Polynomial::constant(n) to bind it to an integer.
// Every constructor builds the symbolic identity and then substitutes, so
// bound and symbolic instances come from the same formula.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cubesum/polynomial.hpp"
#include "cubesum/representation.hpp"

namespace cubesum {

struct IdentityFamily {
  std::string id;
  unsigned arity;
  std::vector<std::string> symbolic_params;
  std::vector<std::string> free_vars;
  std::string description;
};

/// The parametrized families, ordered by id.
const std::vector<IdentityFamily>& identity_families();

/// Ids of the fixed identities, ordered by id.
const std::vector<std::string>& fixed_identity_ids();

/// One-line description of a fixed identity or family.
std::string describe_identity(std::string_view id);

/// p^3 + q^3 as four cubes of quadratics in t.
Representation four_cubes_sum_pq(const Polynomial& p, const Polynomial& q);

/// 2(p^6 - q^6) as four cubes of linear polynomials in t.
Representation four_cubes_two_diff(const Polynomial& p, const Polynomial& q);

/// 1 as four cubes of polynomials in m1, m2.
Representation one_bivariate(const Polynomial& m1, const Polynomial& m2);

/// 2 as four cubes of polynomials in t, g, h.
Representation two_trivariate(const Polynomial& g, const Polynomial& h);

/// 6m + j as five cubes, the fourth repeating the third. Throws
/// std::out_of_range unless 0 <= j <= 5.
Representation five_cubes_residue(int j, const Polynomial& m);

/// Throws UnknownIdentity.
Representation catalog_fixed(std::string_view id);

/// Multiplies every cube by a and the target by a^3.
Representation scale_representation(const Representation& r, const BigInt& a);

/// Looks up a fixed identity or instantiates a family. Family parameters
/// missing from `params` stay symbolic; five_residue reads "j" (default 0)
/// which must be an integer. Throws UnknownIdentity.
IdentityRecord catalog_entry(std::string_view id, const Bindings& params = {});

}  // namespace cubesum
