#include <gtest/gtest.h>

#include "nashtor/families.hpp"
#include "nashtor/fan.hpp"

using namespace nashtor;

namespace {
LatticeVector e(std::size_t i) { return LatticeVector::unit(4, i); }
const SparsePolynomial f1 = parse_polynomial("x1^2 + x2^2 + x3^4 + x4^4");
const SparsePolynomial f2 = parse_polynomial("x1^3 + x2^3 + x3^3 + x4^6");

Fan without_ray(const Fan& F, const LatticeVector& r) {
  std::vector<Cone> keep;
  for (const auto& c : F.maximal_cones())
    if (!c.has_ray(r)) keep.push_back(c);
  return Fan(F.ambient_rank(), keep);
}
}  // namespace

TEST(NewtonFan, Families) {
  const auto N1 = newton_fan(f1);
  EXPECT_EQ(N1.size(), 4u);
  EXPECT_EQ(N1.rays(), (std::vector<LatticeVector>{e(3), e(2), e(1), e(0), {2, 2, 1, 1}}));
  const auto N2 = newton_fan(f2);
  EXPECT_EQ(N2.rays(), (std::vector<LatticeVector>{e(3), e(2), e(1), e(0), {2, 2, 2, 1}}));
  EXPECT_TRUE(is_valid_fan(N1));
  EXPECT_TRUE(is_subdivision(N1, standard_fan(4)));
  const auto N = newton_fan(parse_polynomial("x1"));
  EXPECT_EQ(N, standard_fan(1));
  EXPECT_EQ(N.labels()[0], "N(1)");
}

TEST(NewtonFan, ConeOfVertex) {
  const auto N2 = newton_fan(f2);
  // x4^6 vertex: cone over e1, e2, e3 and rho0
  EXPECT_TRUE(N2.has_cone({e(0), e(1), e(2), {2, 2, 2, 1}}));
  EXPECT_TRUE(N2.has_cone({e(1), e(2), e(3), {2, 2, 2, 1}}));
  EXPECT_FALSE(N2.has_cone({e(0), e(1), e(2), e(3)}));
}

TEST(Subdivision, Examples) {
  for (long p = 2; p <= 4; ++p) {
    FamilySpec s{Family::One, p, 2, {}, {}};
    EXPECT_TRUE(is_subdivision(family1_fan(p), newton_fan(build_polynomial(s)))) << p;
  }
  EXPECT_TRUE(is_subdivision(family2_fan(), newton_fan(f2)));
  EXPECT_TRUE(is_subdivision(newton_fan(f2), newton_fan(f2)));
  EXPECT_TRUE(is_subdivision(family2_fan(), standard_fan(4)));
  const auto stellar = stellar_subdivision(standard_fan(4), {1, 1, 1, 1});
  EXPECT_FALSE(is_subdivision(newton_fan(f2), stellar));
  EXPECT_FALSE(is_subdivision(standard_fan(4), family2_fan()));
}

TEST(Subdivision, MissingConesDetected) {
  const auto cut = without_ray(family2_fan(), family2_rho0());
  EXPECT_EQ(cut.size(), 3u);
  EXPECT_FALSE(is_subdivision(cut, newton_fan(f2)));
  EXPECT_FALSE(is_subdivision(cut, standard_fan(4)));
  EXPECT_THROW(is_subdivision(Fan(4, {Cone(4, {e(0), e(1)})}), standard_fan(4)), InputError);
}

TEST(Validity, OverlappingCones) {
  Fan bad(2, {Cone(2, {{1, 0}, {1, 2}}), Cone(2, {{1, 1}, {0, 1}})});
  EXPECT_FALSE(is_valid_fan(bad));
  EXPECT_EQ(fan_validity_issues(bad).size(), 1u);
  EXPECT_TRUE(is_valid_fan(family1_fan(3)));
  EXPECT_TRUE(is_valid_fan(family2_fan()));
  EXPECT_THROW(Fan(2, {Cone(2, {{1, 0}, {0, 1}}), Cone(2, {{0, 1}, {1, 0}})}), InputError);
}

TEST(Regularity, Examples) {
  EXPECT_TRUE(is_regular_fan(family1_fan(2)));
  EXPECT_TRUE(is_regular_fan(family1_fan(4)));
  EXPECT_TRUE(is_regular_fan(family2_fan()));
  EXPECT_FALSE(is_regular_fan(newton_fan(f1)));
  EXPECT_FALSE(is_regular_fan(newton_fan(f2)));
  EXPECT_TRUE(is_regular_fan(standard_fan(4)));
}

TEST(PropertyStar, Families) {
  EXPECT_TRUE(property_star_check(family1_fan(3), parse_polynomial("x1^3 + x2^3 + x3^9 + x4^9")).ok);
  EXPECT_TRUE(property_star_check(family2_fan(), f2).ok);
}

TEST(PropertyStar, ConstantTerm) {
  // the support function vanishes on all of the standard cone
  const auto f = parse_polynomial("1 + x1", 2);
  EXPECT_TRUE(property_star_check(standard_fan(2), f).ok);
  const auto split = stellar_subdivision(standard_fan(2), {1, 1});
  const auto r = property_star_check(split, f);
  EXPECT_FALSE(r.ok);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0], (std::vector<std::size_t>{0, 1}));
  // without a constant term only the coordinate rays are required
  EXPECT_TRUE(property_star_check(split, parse_polynomial("x1 + x2")).ok);
}

TEST(PropertyStar, AgreesWithSupportFunction) {
  const std::vector<SparsePolynomial> fs = {f1, f2, parse_polynomial("x1*x2 + x3^2 + x4", 4),
                                            parse_polynomial("x1^2 + x2*x3*x4", 4)};
  const Fan F = stellar_subdivision(stellar_subdivision(standard_fan(4), {1, 1, 1, 1}), {1, 1, 0, 0});
  for (const auto& f : fs) {
    const auto N = newton_polyhedron(f);
    std::set<std::vector<std::size_t>> expected;
    for (unsigned mask = 1; mask < 16; ++mask) {
      std::vector<std::size_t> J;
      std::vector<LatticeVector> face;
      LatticeVector center(4);
      for (std::size_t i = 0; i < 4; ++i)
        if (mask & (1u << i)) {
          J.push_back(i);
          face.push_back(e(i));
          center = center + e(i);
        }
      if (N.support(center) == 0 && !F.has_cone(face)) expected.insert(J);
    }
    const auto r = property_star_check(F, f);
    EXPECT_EQ(std::set<std::vector<std::size_t>>(r.violations.begin(), r.violations.end()), expected);
    EXPECT_EQ(r.ok, expected.empty());
  }
}

TEST(GSubdivision, Families) {
  for (long p = 2; p <= 4; ++p) {
    FamilySpec s{Family::One, p, 3, {}, {}};
    const auto f = build_polynomial(s);
    const auto r = g_subdivision_check(family1_fan(p), newton_fan(f), f);
    EXPECT_TRUE(r.g_regular) << p;
    EXPECT_TRUE(r.admissible.value());
    EXPECT_TRUE(r.failures.empty());
  }
  const auto r = g_subdivision_check(family2_fan(), newton_fan(f2), f2);
  EXPECT_TRUE(r.g_regular);
  EXPECT_TRUE(r.refines);
}

TEST(GSubdivision, OverRefinementRejected) {
  const auto fine = stellar_subdivision(family2_fan(), {2, 1, 1, 1});
  EXPECT_TRUE(is_subdivision(fine, newton_fan(f2)));
  const auto r = g_subdivision_check(fine, newton_fan(f2));
  EXPECT_FALSE(r.g_regular);
  EXPECT_FALSE(r.admissible.has_value());
  EXPECT_FALSE(r.failures.empty());
}

TEST(GSubdivision, NonRegularRejected) {
  const auto r = g_subdivision_check(newton_fan(f1), newton_fan(f1));
  EXPECT_FALSE(r.regular);
  EXPECT_FALSE(r.g_regular);
  EXPECT_THROW(g_subdivision_check(standard_fan(4), family2_fan()), InputError);
}

TEST(Stellar, Examples) {
  const auto once = stellar_subdivision(standard_fan(4), family2_rho1());
  EXPECT_EQ(once.size(), 4u);
  EXPECT_TRUE(is_regular_fan(once));
  const auto twice = stellar_subdivision(once, family2_rho0());
  EXPECT_EQ(twice, family2_fan());
  EXPECT_EQ(twice, family2_stellar_fan());
  EXPECT_EQ(twice.size(), 7u);
  EXPECT_EQ(stellar_subdivision(twice, family2_rho0()), twice);
  EXPECT_THROW(stellar_subdivision(standard_fan(4), {2, 2, 2, 2}), InputError);
  EXPECT_THROW(stellar_subdivision(standard_fan(2), {-1, 1}), InputError);
  // a ray on a face splits only the cones containing it
  const auto edge = stellar_subdivision(once, {1, 1, 0, 0});
  EXPECT_EQ(edge.size(), 6u);
  EXPECT_TRUE(is_subdivision(edge, once));
}

TEST(FamilyFans, Counts) {
  for (long p = 2; p <= 6; ++p) {
    const auto F = family1_fan(p);
    EXPECT_EQ(F.size(), static_cast<std::size_t>(4 * p));
    EXPECT_EQ(F.rays().size(), static_cast<std::size_t>(4 + p));
  }
  EXPECT_THROW(family1_fan(1), InputError);
  const auto F = family1_fan(3);
  EXPECT_EQ(F.cone("sigma_{2,2,2}").rays(), (std::vector<LatticeVector>{e(0), {2, 2, 1, 1}, {1, 1, 1, 1}, e(3)}));
  EXPECT_EQ(F.cone("sigma_3").rays(), (std::vector<LatticeVector>{{3, 3, 1, 1}, e(0), e(1), e(3)}));
  EXPECT_EQ(family2_fan().cone("sigma_{1,1}").rays(),
            (std::vector<LatticeVector>{{2, 2, 2, 1}, e(1), e(2), {1, 1, 1, 1}}));
}

TEST(Dot, Canonical) {
  EXPECT_EQ(fan_to_dot(standard_fan(2)), "graph fan {\n  \"(0,1)\";\n  \"(1,0)\";\n  \"(0,1)\" -- \"(1,0)\";\n}\n");
  EXPECT_EQ(fan_to_dot(family2_fan()), fan_to_dot(family2_stellar_fan()));
}
