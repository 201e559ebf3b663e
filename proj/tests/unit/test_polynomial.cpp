#include <gtest/gtest.h>

#include <hvf/error.hpp>
#include <hvf/polynomial.hpp>

#include "oracles.hpp"

using namespace hvf;

namespace {
const std::vector<std::string> kVars{"V1", "V2", "V3"};
}

TEST(Polynomial, ParsesRationalCoefficients) {
  const Polynomial p = Polynomial::parse("V1^2/2 + 1", kVars);
  EXPECT_DOUBLE_EQ(p({1.0, 0.0, 0.0}), 1.5);
  EXPECT_DOUBLE_EQ(p({2.0, 5.0, -1.0}), 3.0);
  EXPECT_EQ(p.degree(), 2);
}

TEST(Polynomial, PrecedenceAndParentheses) {
  const Polynomial p = Polynomial::parse("(3/4)*V1*V2 - 2*(V3 + 1)^2", kVars);
  const double v1 = 0.5, v2 = -2.0, v3 = 0.25;
  EXPECT_NEAR(p({v1, v2, v3}), 0.75 * v1 * v2 - 2 * (v3 + 1) * (v3 + 1), 1e-15);
  EXPECT_DOUBLE_EQ(Polynomial::parse("-V1^2", kVars)({3.0, 0, 0}), -9.0);
  EXPECT_DOUBLE_EQ(Polynomial::parse("2^3", kVars)({0, 0, 0}), 8.0);
}

TEST(Polynomial, DerivativeMatchesHandDerivative) {
  const Polynomial p = Polynomial::parse("V1^3*V2 + V2^2 - 7", kVars);
  const Polynomial d1 = p.derivative(0), d2 = p.derivative(1);
  EXPECT_DOUBLE_EQ(d1({2.0, 3.0, 0}), 3 * 4.0 * 3.0);
  EXPECT_DOUBLE_EQ(d2({2.0, 3.0, 0}), 8.0 + 6.0);
  EXPECT_TRUE(p.derivative(2).is_zero());
}

TEST(Polynomial, ConstantsAndZero) {
  EXPECT_TRUE(Polynomial::parse("0", kVars).is_zero());
  EXPECT_TRUE(Polynomial::parse("V1 - V1", kVars).is_zero());
  EXPECT_TRUE(Polynomial::parse("3/2", kVars).is_constant());
  EXPECT_FALSE(Polynomial::parse("V2", kVars).is_constant());
}

TEST(Polynomial, RejectsMalformedInput) {
  EXPECT_THROW(Polynomial::parse("V1 +", kVars), PreconditionError);
  EXPECT_THROW(Polynomial::parse("V4", kVars), PreconditionError);
  EXPECT_THROW(Polynomial::parse("V1/V2", kVars), PreconditionError);
  EXPECT_THROW(Polynomial::parse("V1^-1", kVars), PreconditionError);
  EXPECT_THROW(Polynomial::parse("sin(V1)", kVars), PreconditionError);
  EXPECT_THROW(Polynomial::parse("(V1", kVars), PreconditionError);
  EXPECT_THROW(Polynomial::parse("1/0", kVars), PreconditionError);
}

TEST(Polynomial, RoundTripsThroughText) {
  const Polynomial p = Polynomial::parse("V1^2/2 - 3*V2*V3 + 1/4", kVars);
  const Polynomial q = Polynomial::parse(p.to_string(), kVars);
  for (double a : {-1.0, 0.3, 2.0})
    EXPECT_NEAR(p({a, 1 - a, a * a}), q({a, 1 - a, a * a}), 1e-14);
}

TEST(PolynomialFunction, AmbientGradientAndHessian) {
  auto f = PolynomialFunction::ambient("x1^2*x2 + x3", 3);
  Vec q(3);
  q << 1.5, -2.0, 0.5;
  EXPECT_DOUBLE_EQ(f->value(q), 1.5 * 1.5 * -2.0 + 0.5);
  Vec g(3);
  g << 2 * 1.5 * -2.0, 1.5 * 1.5, 1.0;
  EXPECT_LT((f->gradient(q) - g).norm(), 1e-14);
  // d/dx1 d/dx2 = 2 x1
  EXPECT_NEAR(f->hessian(q, unit_vector(3, 0), unit_vector(3, 1)), 3.0, 1e-14);
}

TEST(PolynomialFunction, TorusTrigFeatures) {
  auto f = PolynomialFunction::torus_trig("c1*s2", {1.0, 2.0, 1.0});
  Vec q(3);
  q << 0.1, 0.3, 0.0;
  const double w1 = 2 * oracle::pi, w2 = oracle::pi;
  EXPECT_NEAR(f->value(q), std::cos(w1 * 0.1) * std::sin(w2 * 0.3), 1e-15);
  EXPECT_NEAR(f->gradient(q)(0), -w1 * std::sin(w1 * 0.1) * std::sin(w2 * 0.3), 1e-13);
  EXPECT_NEAR(f->hessian(q, unit_vector(3, 0), unit_vector(3, 0)),
              -w1 * w1 * std::cos(w1 * 0.1) * std::sin(w2 * 0.3), 1e-12);
}
