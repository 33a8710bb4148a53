#include "support.hpp"

#include <gtest/gtest.h>

using namespace qhc;
using qhc::testkit::Rng;

namespace {

BiPoly P(const std::string& s) { return parse_poly(s); }

Scalar Q(long num, long den = 1, long inum = 0, long iden = 1) {
    return Scalar::exact(mpq_class(num, den), mpq_class(inum, iden));
}

}  // namespace

TEST(Scalar, ExactFieldAxiomsOnRandomTriples) {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        Scalar a = testkit::random_gaussian(rng), b = testkit::random_gaussian(rng), c = testkit::random_gaussian(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        if (!b.is_zero()) {
            EXPECT_EQ((a / b) * b, a);
        }
        EXPECT_TRUE(a.is_exact());
    }
}

TEST(Scalar, FloatEqualityIsSymmetricAndRelative) {
    Scalar a = Scalar::approx({1e6, 0}, 1e-9);
    Scalar b = Scalar::approx({1e6 + 1e-4, 0}, 1e-9);
    Scalar c = Scalar::approx({1e6 + 1e-2, 0}, 1e-9);
    EXPECT_TRUE(a == b);
    EXPECT_TRUE(b == a);
    EXPECT_FALSE(a == c);
    EXPECT_FALSE(c == a);
    EXPECT_TRUE(Scalar::approx({0, 0}) == Scalar::approx({1e-12, 0}));
}

TEST(Scalar, DivisionByZeroThrows) { EXPECT_THROW(Q(1) / Q(0), std::domain_error); }

TEST(Scalar, ImaginaryUnitSquaresToMinusOne) {
    EXPECT_EQ(Scalar::imag_unit(exact_field).pow(2), Q(-1));
    EXPECT_EQ(Q(1, 2, 3).to_string(), "1/2+3i");
    EXPECT_EQ(Q(0, 1, -1).to_string(), "-i");
}

TEST(PointP1, InfinityIsTaggedNotLarge) {
    PointP1 inf = PointP1::infinity();
    EXPECT_TRUE(inf.is_infinity());
    EXPECT_FALSE(inf == PointP1(Q(1000000000)));
    EXPECT_THROW(inf.value(), std::logic_error);
    EXPECT_EQ(inf.to_string(), "∞");
}

TEST(Parse, Examples) {
    BiPoly a = P("y^2 - x^3");
    EXPECT_EQ(a.size(), 2u);
    EXPECT_EQ(a.coeff(0, 2), Q(1));
    EXPECT_EQ(a.coeff(3, 0), Q(-1));

    BiPoly b = P("x*y + (1/2+i)*x^2");
    EXPECT_EQ(b.size(), 2u);
    EXPECT_EQ(b.coeff(1, 1), Q(1));
    EXPECT_EQ(b.coeff(2, 0), Q(1, 2, 1));
}

TEST(Parse, GrammarErrorsReportPosition) {
    try {
        P("y^2 - - x");
        FAIL() << "expected a syntax error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 6u);
    }
    EXPECT_THROW(P("x^"), ParseError);
    EXPECT_THROW(P("(1/2+i"), ParseError);
    EXPECT_THROW(P("x + 1/0"), ParseError);
    EXPECT_THROW(P("z"), ParseError);
    EXPECT_THROW(P(""), ParseError);
    EXPECT_THROW(P("0.5*x"), ParseError);
}

TEST(Parse, ProductsAndJuxtaposition) {
    EXPECT_EQ(P("x(y-x)"), P("x*y - x^2"));
    EXPECT_EQ(P("-5x^3"), Q(-5) * BiPoly::x(exact_field, 3));
    EXPECT_EQ(P("(y-x)^2"), P("y^2 - 2*x*y + x^2"));
    EXPECT_EQ(P("2i*x"), Q(0, 1, 2) * BiPoly::x());
}

TEST(Parse, FloatModeAcceptsDecimals) {
    BiPoly p = parse_poly("0.5*x + 1e-3*y", float_field(1e-9));
    EXPECT_FALSE(p.field().exact());
    EXPECT_TRUE(p.coeff(1, 0) == Scalar::approx({0.5, 0}));
}

TEST(Format, Examples) {
    EXPECT_EQ(format_poly(P("y^2 - x^3")), "y^2 - x^3");
    EXPECT_EQ(format_poly(BiPoly()), "0");
    EXPECT_EQ(format_poly(BiPoly::monomial(Q(1, 2), 1, 1)), "(1/2)*x*y");
    EXPECT_EQ(format_poly(P("(y-x)(y-2x)")), "y^2 - 3*x*y + 2*x^2");
    EXPECT_EQ(format_poly(P("-x + i*y")), "(0+i)*y - x");
}

TEST(BiPolyTest, NoZeroCoefficientsStored) {
    BiPoly p = P("x + y") - P("x");
    EXPECT_EQ(p.size(), 1u);
    for (const auto& [e, c] : p.terms()) EXPECT_FALSE(c.is_zero());
    EXPECT_TRUE((P("x") - P("x")).is_zero());
}

TEST(BiPolyTest, Orders) {
    EXPECT_EQ(orders(P("x^2*y*(y-x)")), std::make_pair(2u, 1u));
    EXPECT_EQ(orders(P("y^2-x^3")), std::make_pair(0u, 0u));
    EXPECT_EQ(orders(P("x^5")), std::make_pair(5u, 0u));
}

TEST(BiPolyTest, SubstituteExamples) {
    BiPoly x = BiPoly::x(), y = BiPoly::y();
    EXPECT_EQ(substitute(P("y^2 - x^3"), x, x * y), P("x^2*(y^2 - x)"));
    BiPoly any = P("3*x^2*y - (1/2)*y^4 + i");
    EXPECT_EQ(substitute(any, x, y), any);
    EXPECT_EQ(substitute(P("y - x"), x, Q(2) * y + x.pow(2)), P("2*y + x^2 - x"));
}

TEST(BiPolyTest, ScalarProportional) {
    auto a = scalar_proportional(P("2*y^2 - 2*x^3"), P("y^2 - x^3"));
    ASSERT_TRUE(a);
    EXPECT_EQ(*a, Q(2));
    EXPECT_FALSE(scalar_proportional(P("y^2 - x^3"), P("y^2 - x^2")));
    auto z = scalar_proportional(BiPoly(), BiPoly());
    ASSERT_TRUE(z);
    EXPECT_EQ(*z, Q(1));
}

TEST(BiPolyProperty, RingAxioms) {
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        BiPoly p = testkit::random_poly(rng, 4, 4), q = testkit::random_poly(rng, 4, 4),
               r = testkit::random_poly(rng, 4, 4);
        EXPECT_EQ((p * q) * r, p * (q * r));
        EXPECT_EQ(p * (q + r), p * q + p * r);
        EXPECT_EQ(p + q, q + p);
    }
}

TEST(BiPolyProperty, SubstituteIsAHomomorphism) {
    Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        BiPoly p = testkit::random_poly(rng, 4, 4), q = testkit::random_poly(rng, 4, 4);
        BiPoly xe = testkit::random_poly(rng, 3, 2), ye = testkit::random_poly(rng, 3, 2);
        EXPECT_EQ(substitute(p + q, xe, ye), substitute(p, xe, ye) + substitute(q, xe, ye));
        EXPECT_EQ(substitute(p * q, xe, ye), substitute(p, xe, ye) * substitute(q, xe, ye));
    }
}

TEST(BiPolyProperty, ParseInvertsFormat) {
    Rng rng(23);
    for (int i = 0; i < 1000; ++i) {
        BiPoly p = testkit::random_poly(rng);
        std::string text = format_poly(p);
        EXPECT_EQ(parse_poly(text), p) << text;
        EXPECT_EQ(format_poly(parse_poly(text)), text);
    }
}
