#include <gtest/gtest.h>

#include <random>

#include "paramlift/Exceptions.h"
#include "paramlift/Polynomial.h"
#include "paramlift/Rational.h"

using namespace paramlift;

TEST(Rational, ParsesAllNumberForms) {
    EXPECT_EQ(parseRational("3"), Rational(3));
    EXPECT_EQ(parseRational("-3"), Rational(-3));
    EXPECT_EQ(parseRational("3/10"), fraction(3, 10));
    EXPECT_EQ(parseRational("6/20"), fraction(3, 10));
    EXPECT_EQ(parseRational("0.3"), fraction(3, 10));
    EXPECT_EQ(parseRational(".5"), fraction(1, 2));
    EXPECT_EQ(parseRational("1e-5"), fraction(1, 100000));
    EXPECT_EQ(parseRational("2.5E3"), Rational(2500));
    EXPECT_THROW(parseRational("1/0"), SyntaxError);
    EXPECT_THROW(parseRational("abc"), SyntaxError);
    EXPECT_THROW(parseRational(""), SyntaxError);
}

TEST(Rational, Rendering) {
    EXPECT_EQ(toString(fraction(47, 60)), "47/60");
    EXPECT_EQ(toString(Rational(2)), "2");
    EXPECT_EQ(toDecimalString(fraction(1, 3), 5), "0.33333");
    EXPECT_EQ(fromDouble(0.5), fraction(1, 2));
    EXPECT_DOUBLE_EQ(toDouble(fraction(1, 4)), 0.25);
}

TEST(Polynomial, ParseAndPrint) {
    EXPECT_EQ(Polynomial::parse("1 - x").toString(), "-x + 1");
    EXPECT_EQ(Polynomial::parse("x*y").toString(), "x*y");
    EXPECT_EQ(Polynomial::parse("1/3 + 1/3*x").toString(), "1/3*x + 1/3");
    EXPECT_EQ(Polynomial::parse("0.5*x + 0.5*x").toString(), "x");
    EXPECT_EQ(Polynomial::parse("x - x").toString(), "0");
    EXPECT_EQ(Polynomial::parse("2*(1 - x)*y").toString(), "-2*x*y + 2*y");
    EXPECT_EQ(Polynomial::parse("x^1").toString(), "x");
}

TEST(Polynomial, PrintParseRoundTrip) {
    for (char const* text : {"1 - x*y", "3/7*x + 2/9*y - 1", "x*y*z - x + 4", "-1/2"}) {
        Polynomial p = Polynomial::parse(text);
        EXPECT_EQ(Polynomial::parse(p.toString()), p) << text;
    }
}

TEST(Polynomial, RejectsNonMultiAffine) {
    EXPECT_THROW(Polynomial::parse("x^2"), NotMultiAffineError);
    EXPECT_THROW(Polynomial::parse("x*x"), NotMultiAffineError);
    EXPECT_THROW(Polynomial::parse("(x + 1)*(x - 1)"), NotMultiAffineError);
    EXPECT_THROW(Polynomial::variable("x") * Polynomial::variable("x"), NotMultiAffineError);
}

TEST(Polynomial, RejectsMalformedText) {
    EXPECT_THROW(Polynomial::parse("x +"), SyntaxError);
    EXPECT_THROW(Polynomial::parse("(x"), SyntaxError);
    EXPECT_THROW(Polynomial::parse("x $ y"), SyntaxError);
    EXPECT_THROW(Polynomial::parse(""), SyntaxError);
}

TEST(Polynomial, Evaluate) {
    Polynomial p = Polynomial::parse("1 - x*y");
    EXPECT_EQ(p.evaluate({{"x", fraction(1, 2)}, {"y", fraction(1, 3)}}), fraction(5, 6));
    EXPECT_THROW(p.evaluate({{"x", Rational(1)}}), MissingParameterError);
    EXPECT_EQ(Polynomial(fraction(2, 3)).evaluate({}), fraction(2, 3));
}

TEST(Polynomial, SubstituteAndRename) {
    Polynomial p = Polynomial::parse("x*y + x");
    EXPECT_EQ(p.substitute({{"y", Rational(2)}}), Polynomial::parse("3*x"));
    EXPECT_EQ(p.renamed({{"x", "a"}}), Polynomial::parse("a*y + a"));
}

TEST(Polynomial, Queries) {
    Polynomial p = Polynomial::parse("y*x + 2");
    EXPECT_EQ(p.variables(), (std::vector<std::string>{"x", "y"}));
    EXPECT_TRUE(p.contains("x"));
    EXPECT_FALSE(p.contains("z"));
    EXPECT_FALSE(p.isConstant());
    EXPECT_EQ(p.constantPart(), Rational(2));
    EXPECT_TRUE(Polynomial(Rational(3)).isConstant());
    EXPECT_TRUE(Polynomial().isZero());
}

// Random multi-affine polynomials: ring identities and evaluation homomorphism.
TEST(Polynomial, ArithmeticAgreesWithEvaluation) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coefficient(-5, 5);
    std::vector<std::string> names{"x", "y", "z"};
    auto randomPoly = [&](std::vector<std::string> const& vars) {
        Polynomial p(fraction(coefficient(rng), 3));
        for (auto const& v : vars) {
            p += Polynomial::variable(v) * fraction(coefficient(rng), 2);
        }
        return p;
    };
    for (int round = 0; round < 200; ++round) {
        Polynomial a = randomPoly({"x", "y"});
        Polynomial b = randomPoly({"z"});
        Valuation u{{"x", fraction(coefficient(rng), 7)}, {"y", fraction(coefficient(rng), 5)}, {"z", fraction(coefficient(rng), 3)}};
        EXPECT_EQ((a + b).evaluate(u), a.evaluate(u) + b.evaluate(u));
        EXPECT_EQ((a - b).evaluate(u), a.evaluate(u) - b.evaluate(u));
        EXPECT_EQ((a * b).evaluate(u), a.evaluate(u) * b.evaluate(u));
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).isZero());
        EXPECT_EQ(Polynomial::parse((a * b).toString()), a * b);
    }
}
