#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "cubesum/catalog.hpp"
#include "cubesum/errors.hpp"
#include "cubesum/searcher.hpp"
#include "cubesum/verifier.hpp"
#include "test_support.hpp"

namespace cubesum {
namespace {

using testing::C;
using testing::P;

SearchSpace space(long target, unsigned cubes, unsigned degree, unsigned bound,
                  SymmetryMode mode = SymmetryMode::kNone) {
  SearchSpace s;
  s.target = target;
  s.num_cubes = cubes;
  s.max_degree = degree;
  s.coeff_bound = bound;
  s.symmetry = mode;
  return s;
}

std::set<std::string> keys(const SearchResult& r) {
  std::set<std::string> out;
  for (const auto& f : r.found) out.insert(to_text(f.representation));
  return out;
}

bool contains(const SearchResult& r, const Representation& want) {
  return keys(r).count(to_text(normalize_representation(want))) == 1;
}

TEST(Searcher, FindsQuadraticIdentityForOne) {
  const auto r = search(space(1, 4, 2, 2));
  EXPECT_TRUE(contains(r, catalog_fixed("one_quadratic")));
  EXPECT_EQ(r.states_examined, planned_states(space(1, 4, 2, 2)));
  EXPECT_TRUE(r.complete);
}

TEST(Searcher, FindsQuadraticIdentityForTwo) {
  const auto r = search(space(2, 4, 2, 1));
  EXPECT_TRUE(contains(r, catalog_fixed("two_quadratic")));
  EXPECT_TRUE(contains(search(space(2, 4, 2, 2)), catalog_fixed("two_quadratic")));
}

TEST(Searcher, ConstantSolutions) {
  const auto r = search(space(0, 3, 0, 1));
  const Representation cancel(C(0), {C(1), C(-1), C(0)});
  ASSERT_TRUE(contains(r, cancel));
  for (const auto& f : r.found) {
    bool has_zero = false;
    for (const auto& c : f.representation.cubes()) has_zero = has_zero || c.is_zero();
    EXPECT_EQ(f.degenerate, has_zero);
  }
}

TEST(Searcher, EveryResultVerifiesAndIsNormal) {
  for (const auto& s : {space(1, 4, 2, 2), space(2, 4, 2, 2), space(0, 3, 1, 2), space(3, 5, 1, 1)}) {
    const auto r = search(s);
    std::set<std::string> seen;
    for (const auto& f : r.found) {
      EXPECT_TRUE(verify(f.representation).ok);
      EXPECT_EQ(f.representation.target(), Polynomial::constant(s.target));
      EXPECT_EQ(normalize_representation(f.representation), f.representation);
      EXPECT_TRUE(seen.insert(to_text(f.representation)).second);
    }
  }
}

TEST(Searcher, SmallTargetsWithCubesOfConstants) {
  // Oracle: brute force over integer 4-tuples in [-2, 2].
  std::set<std::multiset<long>> expect;
  for (long a = -2; a <= 2; ++a)
    for (long b = a; b <= 2; ++b)
      for (long c = b; c <= 2; ++c)
        for (long d = c; d <= 2; ++d)
          if (a * a * a + b * b * b + c * c * c + d * d * d == 2) expect.insert({a, b, c, d});
  const auto r = search(space(2, 4, 0, 2));
  std::set<std::multiset<long>> got;
  for (const auto& f : r.found) {
    std::multiset<long> m;
    for (const auto& c : f.representation.cubes()) m.insert(c.constant_term().get_si());
    got.insert(m);
  }
  EXPECT_EQ(got, expect);
}

TEST(Searcher, NormalizationIsOrbitInvariant) {
  std::mt19937_64 rng(9);
  const auto t = P("t");
  for (const char* id : {"one_quadratic", "one_cubic", "two_quadratic", "two_cubic_18", "mahler"}) {
    const auto base = catalog_fixed(id);
    const auto normal = normalize_representation(base);
    for (int i = 0; i < 10; ++i) {
      const long shift = static_cast<long>(rng() % 21) - 10;
      const long sign = rng() % 2 ? 1 : -1;
      const auto moved = substitute(base, {{"t", C(sign) * t + C(shift)}});
      EXPECT_EQ(normalize_representation(moved), normal) << id;
    }
  }
}

TEST(Searcher, ShardsPartitionTheSpace) {
  for (const auto& s : {space(1, 4, 2, 2), space(2, 4, 2, 2)}) {
    const auto whole = search(s);
    EXPECT_EQ(to_json(search_shard(s, {0, 1}), false), to_json(whole, false));
    std::vector<SearchResult> parts;
    std::uint64_t planned = 0;
    for (unsigned i = 0; i < 4; ++i) {
      parts.push_back(search_shard(s, {i, 4}));
      planned += planned_states(s, {i, 4});
    }
    const auto merged = merge_results(parts);
    EXPECT_EQ(merged.states_examined, whole.states_examined);
    EXPECT_EQ(planned, whole.states_examined);
    EXPECT_EQ(keys(merged), keys(whole));
    EXPECT_EQ(to_json(merged, false), to_json(whole, false));
    EXPECT_EQ(to_json(search_parallel(s, 3), false), to_json(whole, false));
  }
  EXPECT_THROW(search_shard(space(1, 4, 1, 1), {4, 4}), std::invalid_argument);
}

TEST(Searcher, PairPruningIsSound) {
  // Zero cube sums in [-2, 2] are all pairs, so nothing is pruned here.
  for (long target : {1, 2}) {
    const auto full = search(space(target, 4, 2, 2));
    const auto pruned = search(space(target, 4, 2, 2, SymmetryMode::kPairCancellation));
    EXPECT_LE(pruned.states_examined, full.states_examined);
    const auto have = keys(pruned);
    for (const auto& f : full.found) {
      if (has_pair_cancellation_shape(f.representation, 2)) {
        EXPECT_EQ(have.count(to_text(f.representation)), 1u) << to_text(f.representation);
      }
    }
    for (const auto& f : pruned.found) EXPECT_TRUE(has_pair_cancellation_shape(f.representation, 2));
    EXPECT_TRUE(contains(pruned, catalog_fixed(target == 1 ? "one_quadratic" : "two_quadratic")));
  }
}

TEST(Searcher, PairPruningDropsUnpairedShapes) {
  // 3^3 + 4^3 + 5^3 = 6^3 is a zero cube sum that does not pair off.
  const auto full = search(space(0, 4, 0, 6));
  const auto pruned = search(space(0, 4, 0, 6, SymmetryMode::kPairCancellation));
  EXPECT_LT(pruned.states_examined, full.states_examined);
  const Representation odd(C(0), {C(3), C(4), C(5), C(-6)});
  EXPECT_TRUE(contains(full, odd));
  EXPECT_FALSE(contains(pruned, odd));
  EXPECT_FALSE(has_pair_cancellation_shape(odd, 0));
  const auto have = keys(pruned);
  for (const auto& f : full.found) {
    if (has_pair_cancellation_shape(f.representation, 0)) {
      EXPECT_EQ(have.count(to_text(f.representation)), 1u);
    }
  }
}

TEST(Searcher, Deterministic) {
  const auto s = space(1, 4, 2, 2);
  EXPECT_EQ(to_json(search(s), false).dump(), to_json(search(s), false).dump());
}

TEST(Searcher, Budget) {
  const auto s = space(1, 4, 2, 2);
  SearchOptions tight;
  tight.budget = planned_states(s) - 1;
  try {
    search(s, tight);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.states(), planned_states(s));
  }
  tight.budget = planned_states(s);
  EXPECT_NO_THROW(search(s, tight));
}

TEST(Searcher, ValidatesSpace) {
  EXPECT_THROW(search(space(1, 2, 1, 1)), std::invalid_argument);
  EXPECT_THROW(search(space(1, 6, 1, 1)), std::invalid_argument);
  EXPECT_THROW(search(space(1, 4, 1, 0)), std::invalid_argument);
}

TEST(Searcher, SpaceJsonRoundTrip) {
  const auto s = space(-17, 5, 3, 4, SymmetryMode::kPairCancellation);
  EXPECT_EQ(search_space_from_json(to_json(s)), s);
}

class CheckpointTest : public ::testing::Test {
 protected:
  void SetUp() override {
    path_ = std::filesystem::temp_directory_path() /
            ("cubesum_ckpt_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name() + ".json");
    std::filesystem::remove(path_);
  }
  void TearDown() override { std::filesystem::remove(path_); }
  std::filesystem::path path_;
};

TEST_F(CheckpointTest, ResumeAfterStopMatchesUninterruptedRun) {
  const auto s = space(1, 4, 2, 2);
  const auto whole = search(s);

  SearchOptions opts;
  opts.checkpoint = path_;
  int polled = 0;
  opts.stop = [&] { return ++polled >= 3; };
  const auto partial = search(s, opts);
  EXPECT_FALSE(partial.complete);
  EXPECT_LT(partial.states_examined, whole.states_examined);

  std::ifstream in(path_);
  const auto saved = nlohmann::json::parse(in);
  EXPECT_EQ(saved.at("complete"), false);
  EXPECT_EQ(saved.at("states_examined"), partial.states_examined);
  EXPECT_TRUE(saved.at("last_tuple").is_array());

  opts.stop = nullptr;
  const auto resumed = search(s, opts);
  EXPECT_TRUE(resumed.complete);
  EXPECT_EQ(to_json(resumed, false), to_json(whole, false));

  // A finished checkpoint replays without redoing work.
  const auto again = search(s, opts);
  EXPECT_EQ(to_json(again, false), to_json(whole, false));
}

TEST_F(CheckpointTest, RejectsForeignCheckpoint) {
  SearchOptions opts;
  opts.checkpoint = path_;
  search(space(2, 4, 1, 1), opts);
  EXPECT_THROW(search(space(1, 4, 1, 1), opts), std::invalid_argument);
  std::ofstream(path_) << "{ not json";
  EXPECT_THROW(search(space(2, 4, 1, 1), opts), ParseError);
}

}  // namespace
}  // namespace cubesum
