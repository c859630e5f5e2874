#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cubesum/polynomial.hpp"
#include "cubesum/representation.hpp"

namespace cubesum::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kBoundExceeded = 3,
};

/// Representation of n as `cubes` (4 or 5) cubes. Five cubes always
/// succeed via the residue identities. Four cubes try n = p^3 + q^3, then
/// n = 2(p^6 - q^6), over bounded p, q; the smallest |p| + |q| wins, ties
/// going to the lexicographically largest (p, q). The result is verified
/// before it is returned.
/// Throws NoFourCubeFamilyMatch or std::invalid_argument.
IdentityRecord represent(const BigInt& n, unsigned cubes);

/// Entry point of the `cubesum` tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubesum::cli
