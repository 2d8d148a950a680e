#include "gradecalc/polynomial.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace gradecalc;

TEST(Polynomial, ArithmeticAndEvaluation) {
  const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const Polynomial p = x * y + make_rational(1, 2) * x - Polynomial::constant(2, 3);
  std::vector<Rational> pt{make_rational(2), make_rational(-1, 3)};
  EXPECT_EQ(p.evaluate(std::span<const Rational>(pt)), make_rational(-2, 3) + 1 - 3);
  std::vector<double> d{2.0, -1.0 / 3};
  EXPECT_NEAR(p.evaluate(std::span<const double>(d)), -8.0 / 3, 1e-15);
  EXPECT_TRUE((p - p).is_zero());
}

TEST(Polynomial, DerivativeAndSubstitution) {
  const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const Polynomial p = x * x * y;
  EXPECT_EQ(p.derivative(0), make_rational(2) * x * y);
  EXPECT_EQ(p.derivative(1), x * x);
  // p(x + y, y) = (x + y)^2 y
  const Polynomial q = p.substitute({x + y, y});
  EXPECT_EQ(q, (x + y) * (x + y) * y);
}

TEST(Polynomial, WeightedDegrees) {
  const auto x = Polynomial::variable(3, 0), t = Polynomial::variable(3, 2);
  const std::vector<int> w{1, 1, 2};
  EXPECT_TRUE((x * x + t).is_weighted_homogeneous(w, 2));
  EXPECT_FALSE((x + t).is_weighted_homogeneous(w, 2));
  EXPECT_TRUE(t.depends_on(2));
  EXPECT_FALSE(t.depends_on(0));
}

TEST(Polynomial, RemapAndCompiledPartial) {
  const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const Polynomial p = x * y + make_rational(3) * y;
  const Polynomial r = p.remap(4, {1, 3});
  std::vector<double> v{9, 2, 9, 5};
  EXPECT_DOUBLE_EQ(r.evaluate(std::span<const double>(v)), 2 * 5 + 3 * 5);

  CompiledPolynomial c(p);
  const double pt[2] = {2, 5};
  EXPECT_DOUBLE_EQ(c(pt), 25);
  std::vector<double> fixed{2};
  const auto part = c.partial(fixed, 0);
  EXPECT_EQ(part.num_vars(), 1u);
  const double rest[1] = {5};
  EXPECT_DOUBLE_EQ(part(rest), 25);
}
