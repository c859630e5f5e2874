#include <gtest/gtest.h>

#include "cubesum/catalog.hpp"
#include "cubesum/errors.hpp"
#include "cubesum/verifier.hpp"
#include "test_support.hpp"

namespace cubesum {
namespace {

using testing::C;
using testing::P;

TEST(Verifier, Werebrusow) {
  const Representation r(C(2), {P("1 + 6*t^3"), P("1 - 6*t^3"), P("-6*t^2")});
  const auto report = verify(r);
  EXPECT_TRUE(report.ok);
  ASSERT_TRUE(report.residual.has_value());
  EXPECT_TRUE(report.residual->is_zero());
  EXPECT_FALSE(report.first_bad_term.has_value());
}

TEST(Verifier, OffByOneTarget) {
  EXPECT_TRUE(verify(Representation(C(1), {P("t"), P("-t"), P("1")})).ok);
  const auto report = verify(Representation(C(2), {P("t"), P("-t"), P("1")}));
  EXPECT_FALSE(report.ok);
  EXPECT_EQ(*report.residual, C(-1));
  ASSERT_TRUE(report.first_bad_term.has_value());
  EXPECT_TRUE(report.first_bad_term->monomial.is_one());
  EXPECT_EQ(report.first_bad_term->coefficient, -1);
  EXPECT_NE(to_text(report).find("first bad term: -1"), std::string::npos);
}

TEST(Verifier, FirstBadTermIsGradedLexLeast) {
  // residual = 3*t^3 + 5*t
  const auto report = verify(Representation(P("-3*t^3 - 5*t"), {P("0")}));
  ASSERT_TRUE(report.first_bad_term.has_value());
  EXPECT_EQ(report.first_bad_term->coefficient, 5);
  EXPECT_EQ(report.first_bad_term->monomial[0], 1u);
}

TEST(Verifier, SpotCheckResidueThree) {
  const Representation r(C(3), {P("36*t^3 - 54*t^2 + 27*t - 3"), P("36*t^3 - 54*t^2 + 27*t - 5"),
                                P("-36*t^3 + 54*t^2 - 27*t + 4"),
                                P("-36*t^3 + 54*t^2 - 27*t + 4"), P("-6*t + 3")});
  std::vector<Point> pts;
  for (long t = -2; t <= 2; ++t) pts.push_back({{"t", t}});
  const auto report = spot_check(r, pts);
  EXPECT_TRUE(report.ok);
  EXPECT_FALSE(report.residual.has_value());
  ASSERT_EQ(report.spot_checks.size(), 5u);
  for (const auto& s : report.spot_checks) {
    EXPECT_EQ(s.lhs, 3);
    EXPECT_EQ(s.rhs, 3);
  }
  // Independent check with machine integers.
  for (long long t = -2; t <= 2; ++t) {
    const long long a = 36 * t * t * t - 54 * t * t + 27 * t;
    const long long b = -6 * t + 3;
    EXPECT_EQ((a - 3) * (a - 3) * (a - 3) + (a - 5) * (a - 5) * (a - 5) +
                  2 * (4 - a) * (4 - a) * (4 - a) + b * b * b,
              3);
  }
}

TEST(Verifier, SpotCheckEdgeCases) {
  const Representation r(C(5), {P("x")});
  EXPECT_TRUE(spot_check(r, {}).ok);
  const std::vector<Point> unbound{{{"y", 1}}};
  EXPECT_THROW(spot_check(r, unbound), UnboundVariable);
  const std::vector<Point> wrong{{{"x", 2}}};
  EXPECT_FALSE(spot_check(r, wrong).ok);
}

TEST(Verifier, MahlerAtHugeArgument) {
  const Representation r(C(1), {P("9*t^4"), P("3*t - 9*t^4"), P("1 - 9*t^3")});
  const std::vector<Point> pts{{{"t", BigInt("10000000000")}}};
  const auto report = spot_check(r, pts);
  EXPECT_TRUE(report.ok);
  EXPECT_EQ(report.spot_checks.at(0).lhs, 1);
}

TEST(Verifier, GridPoints) {
  const auto g = grid_points({"a", "b"}, 1, 100);
  ASSERT_EQ(g.size(), 9u);
  EXPECT_EQ(g.front().at("a"), -1);
  EXPECT_EQ(g.back().at("b"), 1);
  EXPECT_EQ(grid_points({"a", "b", "c"}, 2, 10).size(), 10u);
  EXPECT_EQ(grid_points({}, 3, 10).size(), 1u);
}

std::vector<Representation> verified_identities() {
  std::vector<Representation> out;
  for (const auto& id : fixed_identity_ids()) out.push_back(catalog_fixed(id));
  out.push_back(four_cubes_sum_pq(P("p"), P("q")));
  out.push_back(four_cubes_two_diff(P("p"), P("q")));
  out.push_back(two_trivariate(P("g"), P("h")));
  for (int j = 0; j < 6; ++j) out.push_back(five_cubes_residue(j, P("m")));
  return out;
}

TEST(Verifier, ExpansionRoutesAgree) {
  std::mt19937_64 rng(3);
  for (const auto& r : verified_identities()) {
    EXPECT_EQ(sum_of_cubes(r, ExpansionRoute::kPower),
              sum_of_cubes(r, ExpansionRoute::kRepeatedProduct));
    EXPECT_TRUE(verify(r, ExpansionRoute::kRepeatedProduct).ok);
  }
  for (int i = 0; i < 50; ++i) {
    const Representation r(testing::random_polynomial(rng),
                           {testing::random_polynomial(rng, 3), testing::random_polynomial(rng, 3)});
    EXPECT_EQ(*verify(r, ExpansionRoute::kPower).residual,
              *verify(r, ExpansionRoute::kRepeatedProduct).residual);
  }
}

TEST(Verifier, OkImpliesSpotChecksAgree) {
  std::mt19937_64 rng(17);
  for (const auto& r : verified_identities()) {
    ASSERT_TRUE(verify(r).ok) << to_text(r);
    for (int set = 0; set < 20; ++set) {
      std::vector<Point> pts;
      for (int k = 0; k < 5; ++k) pts.push_back(testing::random_point(rng, r.variables()));
      EXPECT_TRUE(spot_check(r, pts).ok) << to_text(r);
    }
  }
}

TEST(Verifier, PlantedFaultsRejected) {
  std::mt19937_64 rng(2024);
  const auto base = verified_identities();
  int rejected = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& r = base[i % base.size()];
    auto cubes = r.cubes();
    auto vars = r.variables();
    // Random nonzero perturbation in the identity's own variables.
    std::vector<Polynomial::RawTerm> terms;
    std::uniform_int_distribution<long> coeff(-9, 9);
    do {
      terms.clear();
      for (int k = 0; k < 2; ++k) {
        std::vector<std::uint32_t> e(vars.size());
        for (auto& x : e) x = rng() % 3;
        long c = coeff(rng);
        terms.emplace_back(std::move(e), BigInt(c));
      }
    } while (Polynomial::from_terms(vars, terms).is_zero());
    cubes[rng() % cubes.size()] += Polynomial::from_terms(vars, terms);
    const Representation bad(r.target(), cubes);
    if (!verify(bad).ok) ++rejected;
  }
  EXPECT_EQ(rejected, 1000);
}

TEST(Verifier, ReportJson) {
  const auto j = to_json(verify(Representation(C(2), {P("t"), P("-t"), P("1")})));
  EXPECT_EQ(j.at("ok"), false);
  EXPECT_EQ(j.at("residual").at("terms").at(0).at("c"), "-1");
}

}  // namespace
}  // namespace cubesum
