#include <gtest/gtest.h>

#include "nashtor/series.hpp"

using namespace nashtor;

namespace {
RationalSeries S(long m, std::vector<long> c) {
  std::vector<Rational> v(c.begin(), c.end());
  return RationalSeries(m, v);
}
RationalSeries sub(const SparsePolynomial& f, const std::vector<RationalSeries>& a) { return substitute_series(f, a); }
PolySeries sub(const SparsePolynomial& f, const std::vector<PolySeries>& a,
               const std::function<PolySeries(PolySeries)>& red = nullptr) {
  return substitute_series(f, a, red);
}
}  // namespace

TEST(Order, Examples) {
  EXPECT_EQ(ord_t_m(S(3, {0, 0, 1, 5})), Order(2));
  EXPECT_TRUE(ord_t_m(S(3, {0, 0, 0, 0})).is_infinite());
  EXPECT_TRUE(ord_t_m(S(3, {0, 0, 1, 1}).truncated(1)).is_infinite());
}

TEST(Order, ExtendedArithmetic) {
  const Order inf = Order::infinity();
  EXPECT_TRUE(Order(3) < inf);
  EXPECT_FALSE(inf < inf);
  EXPECT_TRUE((inf + Order(2)).is_infinite());
  EXPECT_EQ(min(Order(4), inf), Order(4));
  EXPECT_EQ(inf.str(), "inf");
  EXPECT_EQ(Order(5).str(), "5");
}

TEST(Series, Arithmetic) {
  const auto a = S(3, {1, 1});      // 1 + t
  const auto b = S(3, {1, -1});     // 1 - t
  EXPECT_EQ(a * b, S(3, {1, 0, -1}));
  EXPECT_EQ(a + b, S(3, {2}));
  EXPECT_EQ((a * a * a * a), S(3, {1, 4, 6, 4}));
  EXPECT_THROW(a + S(2, {1}), InputError);
  EXPECT_EQ(RationalSeries::monomial(3, 2, 5), S(3, {0, 0, 5}));
  EXPECT_TRUE(RationalSeries::monomial(3, 4, 5).is_zero());
}

TEST(Substitute, Examples) {
  EXPECT_EQ(sub(parse_polynomial("x1^2"), {S(2, {0, 1, 0})}), S(2, {0, 0, 1}));
  const auto s = sub(parse_polynomial("x1^3 + x2^4"), {RationalSeries::monomial(12, 4, 1),
                                                                    RationalSeries::monomial(12, 3, 1)});
  for (long k = 0; k < 12; ++k) EXPECT_EQ(s.coeff(k), 0);
  EXPECT_EQ(s.coeff(12), 2);
  EXPECT_TRUE(sub(parse_polynomial("x1 + x2"), {S(3, {1}), S(3, {-1})}).is_zero());
  EXPECT_THROW(sub(parse_polynomial("x1 + x2"), {S(3, {1}), S(2, {-1})}), InputError);
  EXPECT_THROW(sub(parse_polynomial("x1 + x2"), {S(3, {1})}), InputError);
}

TEST(Substitute, PolynomialCoefficients) {
  // x1 -> a + b t over Q[a, b]
  const auto a = SparsePolynomial::variable(2, 0), b = SparsePolynomial::variable(2, 1);
  PolySeries x(2, {a, b}, SparsePolynomial(2));
  const auto s = sub(parse_polynomial("x1^2"), {x});
  EXPECT_EQ(s.coeff(0), a * a);
  EXPECT_EQ(s.coeff(1), Rational(2) * a * b);
  EXPECT_EQ(s.coeff(2), b * b);
}

TEST(Substitute, ReduceHook) {
  // coefficients in Q[s] truncated at s^1
  const auto s = SparsePolynomial::variable(1, 0);
  PolySeries x(1, {SparsePolynomial::constant(1, 1) + s}, SparsePolynomial(1));
  std::function<PolySeries(PolySeries)> red = [](PolySeries p) {
    return p.map_coeffs([](const SparsePolynomial& c) {
      SparsePolynomial r(1);
      for (const auto& [e, k] : c.terms())
        if (e[0] <= 1) r.add_term(e, k);
      return r;
    });
  };
  const auto r = sub(parse_polynomial("x1^5"), {x}, red);
  EXPECT_EQ(r.coeff(0), SparsePolynomial::constant(1, 1) + Rational(5) * s);
}
