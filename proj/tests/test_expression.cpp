#include <triad/expression.hpp>

#include <gtest/gtest.h>

using namespace triad;
using C = std::complex<double>;

TEST(Expression, ArithmeticAndPrecedence)
{
    EXPECT_EQ(Expression::parse("1 + 2*3")(0, 0, 0), C(7.0));
    EXPECT_EQ(Expression::parse("(1 + 2)*3")(0, 0, 0), C(9.0));
    EXPECT_EQ(Expression::parse("2^3^2")(0, 0, 0), C(512.0));
    EXPECT_EQ(Expression::parse("-2^2")(0, 0, 0), C(-4.0));
    EXPECT_EQ(Expression::parse("k - m / n")(6, 4, 2), C(4.0));
}

TEST(Expression, VariablesImaginaryUnitAndFunctions)
{
    EXPECT_EQ(Expression::parse("i*k")(3, 0, 0), C(0.0, 3.0));
    EXPECT_EQ(Expression::parse("|k|+|m|+|n|")(1, 1, -2), C(4.0));
    EXPECT_EQ(Expression::parse("abs(k*m*n)")(1, 1, -2), C(2.0));
    EXPECT_EQ(Expression::parse("sgn(n)")(1, 1, -2), C(-1.0));
    EXPECT_NEAR(std::abs(Expression::parse("sqrt(|k*m*n|)")(2, -1, -1) - std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(Expression::parse("|k|^0.5")(4, 0, 0) - 2.0), 0.0, 1e-15);
    EXPECT_EQ(Expression::parse("(i*k*m*n)^2")(1, 1, -2), C(-4.0));
}

TEST(Expression, SurfaceKernelMatchesHandValue)
{
    const Expression e = Expression::parse("2*|k*m*n|/(|k|+|m|+|n|)");
    EXPECT_EQ(e(1, 1, -2), C(1.0));
}

TEST(Expression, RejectsMalformedInput)
{
    EXPECT_THROW(Expression::parse("k +"), DomainError);
    EXPECT_THROW(Expression::parse("foo(k)"), DomainError);
    EXPECT_THROW(Expression::parse("(k"), DomainError);
    EXPECT_THROW(Expression::parse("k m"), DomainError);
    EXPECT_THROW(Expression::parse("|k"), DomainError);
}
