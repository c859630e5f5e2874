#include <set>

#include <gtest/gtest.h>

#include "cubesum/catalog.hpp"
#include "cubesum/errors.hpp"
#include "cubesum/verifier.hpp"
#include "test_support.hpp"

namespace cubesum {
namespace {

using testing::C;
using testing::P;

Representation rep(const std::string& target, std::vector<std::string> cubes) {
  std::vector<Polynomial> polys;
  for (const auto& c : cubes) polys.push_back(P(c));
  return Representation(P(target), std::move(polys));
}

TEST(Catalog, FixedIds) {
  EXPECT_EQ(fixed_identity_ids(),
            (std::vector<std::string>{"mahler", "one_bivariate_system", "one_cubic", "one_deg6",
                                      "one_quadratic", "two_cubic_18", "two_cubic_3",
                                      "two_quadratic", "werebrusow"}));
  std::set<std::string> all(fixed_identity_ids().begin(), fixed_identity_ids().end());
  for (const auto& f : identity_families()) EXPECT_TRUE(all.insert(f.id).second) << f.id;
  EXPECT_EQ(all.size(), 14u);
}

TEST(Catalog, FixedValues) {
  EXPECT_EQ(catalog_fixed("werebrusow"), rep("2", {"1+6*t^3", "1-6*t^3", "-6*t^2"}));
  EXPECT_EQ(catalog_fixed("mahler"), rep("1", {"9*t^4", "3*t-9*t^4", "1-9*t^3"}));
  EXPECT_EQ(catalog_fixed("one_deg6"),
            rep("1", {"3*t^6+3*t^3+1", "-3*t^3*(t^3+1)", "-3*t^4-2*t", "-t"}));
  EXPECT_EQ(catalog_fixed("two_cubic_3"), rep("2", {"3*t^3+1", "-3*t^3+1", "-3*t^2", "-3*t^2"}));
  EXPECT_THROW(catalog_fixed("nope"), UnknownIdentity);
}

TEST(Catalog, EveryFixedIdentityVerifies) {
  for (const auto& id : fixed_identity_ids()) {
    EXPECT_TRUE(verify(catalog_fixed(id)).ok) << id;
    EXPECT_FALSE(describe_identity(id).empty());
  }
}

TEST(Catalog, FourPqNumericExamples) {
  EXPECT_EQ(four_cubes_sum_pq(C(2), C(-1)),
            rep("7", {"2*t^2-4*t-1", "2*t^2-4*t-4", "-2*t^2+5*t+2", "-2*t^2+3*t+4"}));
  EXPECT_EQ(four_cubes_sum_pq(C(2), C(1)),
            rep("9", {"6*t^2+4*t+1", "6*t^2+4*t", "-6*t^2-t+2", "-6*t^2-7*t"}));
  const auto zero = four_cubes_sum_pq(C(0), C(0));
  EXPECT_EQ(zero.target(), C(0));
  for (const auto& c : zero.cubes()) EXPECT_TRUE(c.is_zero());
}

TEST(Catalog, FourPqAtOppositeParameters) {
  // The derivation divides by p + q, but the closed form is fine there.
  for (long p = -5; p <= 5; ++p) {
    const auto r = four_cubes_sum_pq(C(p), C(-p));
    EXPECT_EQ(r.target(), C(0));
    EXPECT_TRUE(verify(r).ok);
  }
  const auto r = four_cubes_sum_pq(P("p"), P("-p"));
  EXPECT_TRUE(verify(r).ok);
}

TEST(Catalog, FourEvenExamples) {
  EXPECT_EQ(four_cubes_two_diff(C(2), C(1)), rep("126", {"2*t-1", "-2*t-1", "t+4", "-t+4"}));
  EXPECT_EQ(four_cubes_two_diff(P("p"), P("p")).target(), C(0));
  EXPECT_EQ(four_cubes_two_diff(C(1), C(0)), rep("2", {"t", "-t", "1", "1"}));
}

TEST(Catalog, OneBivariate) {
  const auto sym = one_bivariate(P("m1"), P("m2"));
  EXPECT_EQ(sym, catalog_fixed("one_bivariate_system"));
  EXPECT_EQ(sym.target(), C(1));
  EXPECT_TRUE(verify(sym).ok);

  // Independent oracle: the printed formulas evaluated with machine integers.
  auto tuple = [](long long a, long long b) {
    const long long s = 2 * b * b - 1;
    return std::vector<long long>{
        2 * s * s * a * a + 4 * b * s * a + 2 * b * b,
        -2 * s * s * a * a - (4 * b - 1) * s * a - (2 * b + 1) * (b - 1),
        -2 * s * s * a * a - (4 * b + 1) * s * a - (b + 1) * (2 * b - 1),
        2 * s * s * a * a + 4 * b * s * a + 2 * b * b - 1};
  };
  for (long a = -5; a <= 5; ++a) {
    for (long b = -5; b <= 5; ++b) {
      std::vector<Polynomial> expect;
      long long sum = 0;
      for (long long x : tuple(a, b)) {
        expect.push_back(C(static_cast<long>(x)));
        sum += x * x * x;
      }
      EXPECT_EQ(sum, 1);
      EXPECT_EQ(one_bivariate(C(a), C(b)), Representation(C(1), expect));
    }
  }
  EXPECT_EQ(one_bivariate(C(0), C(0)), rep("1", {"0", "1", "1", "-1"}));
  EXPECT_EQ(one_bivariate(C(1), C(1)), rep("1", {"8", "-5", "-9", "7"}));
}

TEST(Catalog, TwoTrivariate) {
  EXPECT_EQ(two_trivariate(C(1), C(1)), rep("2", {"24*t^3+1", "-24*t^3+1", "-12*t^2", "-12*t^2"}));
  EXPECT_EQ(two_trivariate(C(1), C(-1)), rep("2", {"1", "1", "0", "0"}));
  EXPECT_TRUE(verify(two_trivariate(P("g"), P("h"))).ok);
}

TEST(Catalog, FiveResidueExamples) {
  EXPECT_EQ(five_cubes_residue(3, C(0)),
            rep("3", {"36*t^3-54*t^2+27*t-3", "36*t^3-54*t^2+27*t-5", "-36*t^3+54*t^2-27*t+4",
                      "-36*t^3+54*t^2-27*t+4", "-6*t+3"}));
  EXPECT_EQ(five_cubes_residue(4, C(0)),
            rep("4", {"36*t^3+36*t^2+12*t+3", "36*t^3+36*t^2+12*t+1", "-36*t^3-36*t^2-12*t-2",
                      "-36*t^3-36*t^2-12*t-2", "-6*t-2"}));
  EXPECT_EQ(five_cubes_residue(0, P("m")),
            rep("6*m", {"36*t^3+m+1", "36*t^3+m-1", "-36*t^3-m", "-36*t^3-m", "-6*t"}));
  EXPECT_THROW(five_cubes_residue(6, C(0)), std::out_of_range);
  EXPECT_THROW(five_cubes_residue(-1, C(0)), std::out_of_range);
}

TEST(Catalog, FiveResidueShape) {
  for (int j = 0; j < 6; ++j) {
    const auto r = five_cubes_residue(j, P("m"));
    EXPECT_EQ(r.arity(), 5u);
    EXPECT_EQ(r.target(), P("6*m + " + std::to_string(j)));
    for (const auto& c : r.cubes()) EXPECT_LE(c.degree_in("t"), 3u);
    EXPECT_EQ(r.cubes().back().degree_in("t"), 3u);
    EXPECT_TRUE(verify(r).ok) << j;
    for (long m = -50; m <= 50; ++m) {
      const auto bound = five_cubes_residue(j, C(m));
      const BigInt c = bound.target().constant_term();
      EXPECT_EQ(mpz_fdiv_ui(c.get_mpz_t(), 6), static_cast<unsigned long>(j));
      EXPECT_TRUE(verify(bound).ok);
    }
  }
}

TEST(Catalog, SymbolicFamiliesVerify) {
  const auto pq = four_cubes_sum_pq(P("p"), P("q"));
  EXPECT_EQ(pq.target(), P("p^3 + q^3"));
  EXPECT_EQ(pq.variables(), (std::vector<std::string>{"p", "q", "t"}));
  const auto report = verify(pq);
  EXPECT_TRUE(report.ok);
  EXPECT_TRUE(report.residual->is_zero());
  EXPECT_TRUE(verify(four_cubes_two_diff(P("p"), P("q"))).ok);
}

TEST(Catalog, ParameterGrid) {
  for (long a = -5; a <= 5; ++a) {
    for (long b = -5; b <= 5; ++b) {
      EXPECT_TRUE(verify(four_cubes_sum_pq(C(a), C(b))).ok);
      EXPECT_TRUE(verify(four_cubes_two_diff(C(a), C(b))).ok);
      EXPECT_TRUE(verify(two_trivariate(C(a), C(b))).ok);
      EXPECT_TRUE(verify(one_bivariate(C(a), C(b))).ok);
    }
  }
}

TEST(Catalog, Scaling) {
  EXPECT_EQ(scale_representation(catalog_fixed("mahler"), 2),
            rep("8", {"18*t^4", "6*t-18*t^4", "2-18*t^3"}));
  const auto w = catalog_fixed("werebrusow");
  EXPECT_EQ(scale_representation(w, 1), w);
  for (long a = -6; a <= 6; ++a) {
    const auto s = scale_representation(w, a);
    EXPECT_EQ(s.target(), C(2 * a * a * a));
    EXPECT_TRUE(verify(s).ok);
    EXPECT_TRUE(verify(scale_representation(five_cubes_residue(2, P("m")), a)).ok);
  }
}

TEST(Catalog, Entry) {
  const auto rec = catalog_entry("four_pq", {{"p", C(2)}, {"q", C(-1)}});
  EXPECT_EQ(rec.id, "four_pq");
  EXPECT_EQ(rec.representation, four_cubes_sum_pq(C(2), C(-1)));
  EXPECT_EQ(rec.params.at("p"), "2");

  const auto half = catalog_entry("four_even", {{"p", C(3)}});
  EXPECT_EQ(half.representation, four_cubes_two_diff(C(3), P("q")));

  const auto res = catalog_entry("five_residue", {{"j", C(4)}, {"m", C(7)}});
  EXPECT_EQ(res.representation.target(), C(46));
  EXPECT_THROW(catalog_entry("five_residue", {{"j", P("x")}}), std::invalid_argument);

  EXPECT_EQ(catalog_entry("mahler").representation, catalog_fixed("mahler"));
  EXPECT_THROW(catalog_entry("bogus"), UnknownIdentity);
}

}  // namespace
}  // namespace cubesum
