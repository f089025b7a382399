#include "hbvp/errors.hpp"
#include "hbvp/expression.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace hbvp {
namespace {

TEST(Expression, ArithmeticAndPrecedence) {
    const auto e = Expression::parse("1 + 2*3^2 - -4/2", {});
    EXPECT_DOUBLE_EQ(e.evaluate({}).real(), 21.0);
    EXPECT_DOUBLE_EQ(Expression::parse("2^3^2", {}).evaluate({}).real(), 512.0);
    EXPECT_DOUBLE_EQ(Expression::parse("-2^2", {}).evaluate({}).real(), -4.0);
}

TEST(Expression, FunctionsAndVariables) {
    const auto e = Expression::parse("cos(theta)^2 + sin(theta)^2", {"theta"});
    EXPECT_NEAR(e.evaluate("theta", 0.7).real(), 1.0, 1e-15);
    const auto z = Expression::parse("-exp(i*theta)", {"theta"});
    const cplx v = z.evaluate("theta", 0.3);
    EXPECT_NEAR(v.real(), -std::cos(0.3), 1e-15);
    EXPECT_NEAR(v.imag(), -std::sin(0.3), 1e-15);
    EXPECT_NEAR(Expression::parse("abs(x) + sqrt(4) + log(e)", {"x"}).evaluate("x", -1.5).real(), 4.5, 1e-15);
}

TEST(Expression, Constants) {
    EXPECT_DOUBLE_EQ(parse_constant("2*pi"), 2.0 * std::numbers::pi);
    EXPECT_DOUBLE_EQ(parse_constant("pi/2"), std::numbers::pi / 2.0);
    EXPECT_DOUBLE_EQ(parse_constant("0.25"), 0.25);
}

TEST(Expression, Errors) {
    EXPECT_THROW(Expression::parse("1 +", {}), ConfigError);
    EXPECT_THROW(Expression::parse("foo(1)", {}), ConfigError);
    EXPECT_THROW(Expression::parse("(1", {}), ConfigError);
    EXPECT_THROW(Expression::parse("y", {"x"}), ConfigError);
    EXPECT_THROW(parse_constant("theta"), ConfigError);
}

}  // namespace
}  // namespace hbvp
