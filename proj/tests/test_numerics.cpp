#include "trilinear/numerics.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace trilinear;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

StructuredScalar ss(long num, long den, long two_exp, long pi_half_exp) {
    return StructuredScalar(q(num, den), Rational(two_exp), pi_half_exp);
}

double rel(const BigC& a, const BigC& b) { return relative_error(a, b).to_double(); }

}  // namespace

TEST(Pochhammer, EmptyProductIsOne) {
    EXPECT_EQ(pochhammer(q(7, 3), 0), q(1));
    EXPECT_EQ(pochhammer(CRational(q(1, 2), q(3)), 0), CRational(1));
}

TEST(Pochhammer, HitsZeroFactor) { EXPECT_EQ(pochhammer(q(-3), 4), q(0)); }

TEST(Pochhammer, HalfIntegerProduct) { EXPECT_EQ(pochhammer(q(1, 2), 3), q(15, 8)); }

TEST(Pochhammer, SplitsAtEveryLength) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 9), len(0, 20);
    for (int i = 0; i < 40; ++i) {
        Rational x = q(num(rng), den(rng));
        long m = len(rng), n = len(rng);
        EXPECT_EQ(pochhammer(x, m + n), pochhammer(x, m) * pochhammer(x + m, n));
        CRational z(x, q(num(rng), den(rng)));
        EXPECT_EQ(pochhammer(z, m + n), pochhammer(z, m) * pochhammer(z + CRational(m), n));
        BigC b(z);
        EXPECT_LT(rel(pochhammer(b, m + n), pochhammer(b, m) * pochhammer(b + BigC(q(m)), n)), 1e-70);
        Jet2<Rational> j{x, q(1), q(0)};
        Jet2<Rational> shifted{x + m, q(1), q(0)};
        EXPECT_EQ(pochhammer(j, m + n, q(1)), pochhammer(j, m, q(1)) * pochhammer(shifted, n, q(1)));
    }
}

TEST(ReciprocalGamma, ClassicalValues) {
    EXPECT_EQ(rgamma(q(1)), StructuredScalar(1));
    EXPECT_TRUE(rgamma(q(-2)).is_zero());
    EXPECT_EQ(rgamma(q(1, 2)), ss(1, 1, 0, -1));
}

TEST(ReciprocalGamma, ExactZerosAtNonpositiveIntegers) {
    for (long m = 0; m <= 50; ++m) {
        EXPECT_TRUE(rgamma(q(-m)).is_zero()) << m;
        EXPECT_TRUE(rgamma(CRational(-m)).is_zero()) << m;
    }
}

TEST(ReciprocalGamma, FunctionalEquation) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-60, 60), den(1, 12);
    for (int i = 0; i < 60; ++i) {
        Rational z = q(num(rng), den(rng));
        if (is_nonpositive_integer(z)) continue;
        EXPECT_EQ(rgamma(z + 1), rgamma(z) / StructuredScalar(z)) << z.get_str();
        CRational w(z, q(num(rng), den(rng)));
        EXPECT_LT(rel(rgamma(w + CRational(1)), rgamma(w) / BigC(w)), 1e-70);
    }
}

TEST(ReciprocalGamma, NumericMatchesExactOnRationals) {
    for (Rational z : {q(1, 3), q(-7, 2), q(11, 5), q(5), q(-1, 7)}) {
        EXPECT_LT(rel(rgamma(CRational(z)), rgamma(z).to_bigc(256)), 1e-70) << z.get_str();
    }
}

TEST(GammaHalf, IntegersAndHalfIntegers) {
    EXPECT_EQ(gamma_half(q(3)), StructuredScalar(2));
    EXPECT_EQ(gamma_half(q(1, 2)), ss(1, 1, 0, 1));
    EXPECT_EQ(gamma_half(q(5, 2)), ss(3, 1, -2, 1));
    EXPECT_THROW(gamma_half(q(-4)), PoleError);
    EXPECT_THROW(gamma_half(q(1, 3)), std::domain_error);
}

TEST(Digamma, ClassicalValues) {
    PrecisionScope scope(256);
    BigC euler(const_euler());
    EXPECT_LT(rel(digamma(BigC(q(1))), -euler), 1e-70);
    EXPECT_LT(rel(digamma(BigC(q(2))), BigC(q(1)) - euler), 1e-70);
    Real pi = const_pi();
    EXPECT_LT(rel(trigamma(BigC(q(1))), BigC(pi * pi / Real(6L))), 1e-70);
    EXPECT_THROW(digamma(BigC(q(-3))), PoleError);
}

TEST(Digamma, ShiftRecurrence) {
    BigC z(CRational(q(-13, 4), q(5, 3)));
    BigC one(q(1));
    EXPECT_LT(rel(digamma(z + one), digamma(z) + one / z), 1e-70);
    EXPECT_LT(rel(trigamma(z + one), trigamma(z) - one / (z * z)), 1e-70);
}

TEST(Jet, MultiplicationRule) {
    Jet2<Rational> a{q(2), q(3), q(5)}, b{q(7), q(11), q(13)};
    Jet2<Rational> c = a * b;
    EXPECT_EQ(c.c0, q(14));
    EXPECT_EQ(c.c1, q(2 * 11 + 3 * 7));
    EXPECT_EQ(c.c2, q(2 * 13 + 3 * 11 + 5 * 7));
    Jet2<Rational> back = c / b;
    EXPECT_EQ(back, a);
}

TEST(Jet, ReciprocalGammaGermAtPoles) {
    for (long m = 0; m <= 6; ++m) {
        Jet2<ExactSum> g = rgamma(Jet2<Rational>{q(-m), q(1), q(0)});
        EXPECT_TRUE(g.c0.is_zero());
        Rational expected = (m % 2 ? -1 : 1) * Rational(factorial(m));
        EXPECT_EQ(g.c1, ExactSum(expected)) << m;
    }
}

TEST(Jet, FirstCoefficientMatchesFiniteDifference) {
    PrecisionScope scope(256);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 7);
    Rational h = q(1, 1000000000000000LL) * q(1, 1000000000000000LL);  // 1e-30
    for (int i = 0; i < 20; ++i) {
        CRational z0(q(num(rng), den(rng)), q(num(rng), den(rng)));
        CRational dir(q(num(rng), den(rng)) + q(1, 2), q(num(rng), den(rng)));
        Jet2<BigC> jet = rgamma(Jet2<BigC>{BigC(z0), BigC(dir), BigC(256)});
        BigC fd = (rgamma(z0 + dir * CRational(h)) - rgamma(z0 - dir * CRational(h))) / BigC(q(2) * h);
        EXPECT_LT(rel(jet.c1, fd), 1e-20);
    }
}

TEST(Jet, ExactAndNumericGermsAgree) {
    for (Rational z : {q(-3), q(1, 2), q(-5, 2), q(4, 3)}) {
        Jet2<ExactSum> e = rgamma(Jet2<Rational>{z, q(2), q(1)});
        Jet2<BigC> n = rgamma(Jet2<BigC>{BigC(z), BigC(q(2)), BigC(q(1))});
        EXPECT_LT(rel(e.c0.to_bigc(256), n.c0), 1e-60);
        EXPECT_LT(rel(e.c1.to_bigc(256), n.c1), 1e-60);
        EXPECT_LT(rel(e.c2.to_bigc(256), n.c2), 1e-60);
    }
}

TEST(StructuredScalar, CanonicalZero) {
    StructuredScalar z(q(0), Rational(5), 3);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.two_exp(), 0);
    EXPECT_EQ(z.pi_half_exp(), 0);
    EXPECT_EQ(z, StructuredScalar());
}

TEST(StructuredScalar, ExactProductsAndConversion) {
    StructuredScalar a = ss(3, 7, 5, 3), b = ss(-11, 9, -2, -1), c = gamma_exact(q(1, 3));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b / b, a);
    double tol = std::ldexp(1.0, -(256 - 8));
    EXPECT_LT(rel((a * b * c).to_bigc(256), a.to_bigc(256) * b.to_bigc(256) * c.to_bigc(256)), tol);
}

TEST(ExactSum, Distributive) {
    ExactSum a(ss(3, 5, 1, 2)), b(ss(2, 1, 0, 1)), c(gamma_exact(q(2, 7)));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
}

TEST(BigC, PrecisionNeverDropsBelowInputs) {
    BigC a(q(1, 3), 512), b(q(1, 7), 512);
    EXPECT_GE((a * b).precision(), 512);
    EXPECT_GE((a + b).precision(), 512);
}

TEST(Parsing, RationalsAndComplex) {
    EXPECT_EQ(parse_rational("-6/4"), q(-3, 2));
    EXPECT_EQ(parse_crational("1/2+3/4i"), CRational(q(1, 2), q(3, 4)));
    EXPECT_EQ(parse_crational("-2i"), CRational(q(0), q(-2)));
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("x"), ParseError);
    EXPECT_THROW(parse_crational(""), ParseError);
}
