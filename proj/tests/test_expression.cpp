#include <gtest/gtest.h>

#include <cmath>

#include "gcauchy/errors.hpp"
#include "gcauchy/expression.hpp"

using namespace gcauchy;

namespace {

std::size_t error_position(const std::string& s) {
  try {
    Expression::parse(s);
  } catch (const ParseError& e) {
    return e.position;
  }
  return std::string::npos;
}

}  // namespace

TEST(Expression, Constant) {
  const auto e = Expression::parse("1");
  EXPECT_EQ(e(0.3), cplx(1));
  EXPECT_TRUE(e.is_constant());
  EXPECT_FALSE(e.uses_i());
}

TEST(Expression, MatchesHostMath) {
  const auto e = Expression::parse("0.5*cos(y)");
  for (double y : {-2.0, -0.3, 0.0, 0.7, 1.9}) EXPECT_EQ(e(y).real(), 0.5 * std::cos(y));
  const auto f = Expression::parse("sinh(t) + cosh(t)/3 - exp(-t^2) * sin(2*t)");
  for (double t : {-1.0, 0.25, 2.0})
    EXPECT_NEAR(f(t).real(), std::sinh(t) + std::cosh(t) / 3 - std::exp(-t * t) * std::sin(2 * t), 1e-15);
  EXPECT_FALSE(f.is_constant());
}

TEST(Expression, Precedence) {
  EXPECT_EQ(Expression::parse("-2^2")(0), cplx(-4));
  EXPECT_EQ(Expression::parse("2^3^2")(0), cplx(512));
  EXPECT_EQ(Expression::parse("1 - 2 - 3")(0), cplx(-4));
  EXPECT_EQ(Expression::parse("8 / 4 / 2")(0), cplx(1));
  EXPECT_EQ(Expression::parse("(1 + 2) * 3")(0), cplx(9));
  EXPECT_EQ(Expression::parse("2e-1 * y")(5), cplx(1));
  EXPECT_EQ(Expression::parse("y^2")(-3), cplx(9));
}

TEST(Expression, ComplexConstants) {
  const auto e = Expression::parse("0.5 + 0.1*i*y");
  EXPECT_TRUE(e.uses_i());
  EXPECT_NEAR(std::abs(e(2.0) - cplx(0.5, 0.2)), 0, 1e-16);
  EXPECT_NEAR(std::abs(Expression::parse("exp(i*y)")(1.0) - std::exp(cplx(0, 1))), 0, 1e-15);
  EXPECT_EQ(Expression::parse("i^2")(0), cplx(-1, 0));
}

TEST(Expression, SyntaxErrorsCarryPositions) {
  EXPECT_EQ(error_position("1+"), 2u);
  EXPECT_EQ(error_position("(1"), 2u);
  EXPECT_EQ(error_position("2 * foo(y)"), 4u);
  EXPECT_EQ(error_position("1 2"), 2u);
  EXPECT_EQ(error_position("sin y"), 4u);
  EXPECT_EQ(error_position(""), 0u);
  EXPECT_EQ(error_position("3 $"), 2u);
  try {
    Expression::parse("1+");
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("position 2"), std::string::npos);
  }
}
