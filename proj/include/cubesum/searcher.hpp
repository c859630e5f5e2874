#pragma once

// Exhaustive search for representations of an integer as a sum of cubes of
// univariate polynomials in t with bounded degree and coefficients.
//
// Candidates are multisets of polynomials, enumerated grouped by their
// t^max_degree coefficients ("leading tuples"). Since the target is
// constant, those coefficients must have cubes summing to zero (or to the
// target when max_degree is 0), and only such tuples are visited. The first
// num_cubes - 1 polynomials are enumerated; the last is found by looking up
// the required cube in a table. Shards partition the leading tuples.
//
// Results are reported modulo the normalization group: permutations of the
// cubes and substitutions t -> t + c and t -> -t + c for integer c.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "cubesum/polynomial.hpp"
#include "cubesum/representation.hpp"

namespace cubesum {

enum class SymmetryMode {
  kNone,
  /// Nonzero leading coefficients must cancel in pairs (a, -a).
  kPairCancellation,
};

struct SearchSpace {
  BigInt target;
  unsigned num_cubes = 4;
  unsigned max_degree = 2;
  unsigned coeff_bound = 1;
  SymmetryMode symmetry = SymmetryMode::kNone;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  friend bool operator==(const SearchSpace&, const SearchSpace&) = default;
};

struct Shard {
  unsigned index = 0;
  unsigned total = 1;
  friend bool operator==(const Shard&, const Shard&) = default;
};

struct FoundIdentity {
  Representation representation;
  /// Some cube is the zero polynomial.
  bool degenerate = false;
};

struct SearchResult {
  /// Normalized, deduplicated, sorted by text form.
  std::vector<FoundIdentity> found;
  std::uint64_t states_examined = 0;
  std::chrono::nanoseconds elapsed{0};
  /// False when the run was stopped early; resume from the checkpoint.
  bool complete = true;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;

struct SearchOptions {
  std::uint64_t budget = kDefaultSearchBudget;
  /// Progress file; an existing file for the same space and shard is
  /// resumed from.
  std::optional<std::filesystem::path> checkpoint;
  std::chrono::milliseconds checkpoint_interval{1000};
  /// Polled after each leading tuple; returning true saves the checkpoint
  /// and returns the partial result.
  std::function<bool()> stop;
};

/// Number of candidates the shard will examine.
std::uint64_t planned_states(const SearchSpace& space, Shard shard = {});

/// Throws BudgetExceeded when planned_states exceeds the budget.
SearchResult search(const SearchSpace& space, const SearchOptions& options = {});
SearchResult search_shard(const SearchSpace& space, Shard shard,
                          const SearchOptions& options = {});

/// Runs every shard of a `jobs`-way split on its own thread and merges.
SearchResult search_parallel(const SearchSpace& space, unsigned jobs,
                             const SearchOptions& options = {});

/// Deterministic union; states and elapsed times are summed.
SearchResult merge_results(std::span<const SearchResult> parts);

/// Canonical representative of r's orbit under the normalization group.
/// r must be univariate in t (or constant).
Representation normalize_representation(const Representation& r);

/// True iff the nonzero t^max_degree coefficients of the cubes pair off as
/// (a, -a).
bool has_pair_cancellation_shape(const Representation& r, unsigned max_degree);

nlohmann::json to_json(const SearchSpace& space);
SearchSpace search_space_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SearchResult& result, bool include_elapsed = true);

}  // namespace cubesum
