#include "trilinear/suites.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace trilinear;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }
CRational c(long p, long d = 1) { return CRational(q(p, d)); }

StructuredScalar exact(const CoeffValue& v) { return std::get<StructuredScalar>(v); }

}  // namespace

TEST(KTilde, ValueAtTheOrigin) {
    Ambient n5(5);
    StructuredScalar expected = StructuredScalar::pi_half(12) * StructuredScalar::pow2(q(-12));
    SpectralParam p{{c(0), c(0), c(0)}, n5};
    EXPECT_EQ(exact(ktilde_lambda(p, {0, 0, 0})), expected);
    EXPECT_EQ(exact(ktilde_alpha(to_geometric(p), {0, 0, 0})), expected);
}

TEST(KTilde, VanishesOnALine) {
    Ambient n4(4);
    EXPECT_TRUE(zero_set_check({{c(-3, 2), c(1, 4), c(1, 4)}, n4}, 5));
}

TEST(KTilde, PochhammerZero) {
    Ambient n5(5);
    // (-l1 + l2 + l3 + rho)/2 = 0
    SpectralParam p{{c(5, 3), c(1, 3), c(-2, 3)}, n5};
    EXPECT_TRUE(is_zero(ktilde_lambda(p, {1, 0, 0})));
    EXPECT_FALSE(is_zero(ktilde_lambda(p, {0, 1, 0})));
}

TEST(KTilde, GeometricAndSpectralFormsAgree) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        Ambient amb(static_cast<int>(uniform(rng, 4, 7)));
        GeometricParam g{{CRational(random_rational(rng)), CRational(random_rational(rng)), CRational(random_rational(rng))},
                         amb};
        SpectralParam p = to_spectral(g);
        for (const auto& a : grid(5)) ASSERT_EQ(exact(ktilde_alpha(g, a)), exact(ktilde_lambda(p, a)));
    }
}

TEST(KTilde, ComplexParametersFallBackToNumeric) {
    Ambient n5(5);
    SpectralParam p{{CRational(q(1, 2), q(1, 3)), c(1, 7), c(0)}, n5};
    EXPECT_FALSE(is_exact(ktilde_lambda(p, {1, 0, 2})));
    EXPECT_THROW(ktilde_lambda(p, {1, 0, 2}, EvalMode::Exact), NotExact);
    SpectralParam r{{c(1, 2), c(1, 7), c(0)}, n5};
    EXPECT_LT(relative_gap(to_bigc(ktilde_lambda(r, {1, 0, 2})), to_bigc(ktilde_lambda(r, {1, 0, 2}, EvalMode::Numeric))),
              1e-70);
}

TEST(TTilde, SlotVanishing) {
    Ambient n5(5);
    for (long k = 0; k <= 4; ++k) EXPECT_TRUE(is_zero(ttilde_coeff(3, k, {c(1, 3), c(-2, 5)}, n5, {0, 0, k + 1})));
    EXPECT_THROW(ttilde_coeff(3, -1, {c(0), c(0)}, n5, {0, 0, 0}), DomainError);
}

TEST(TTilde, OriginValueThroughTheKTIdentity) {
    Ambient n5(5);
    // K~((0,0,-4), 0) = pi^rho / Gamma(2)^3 * T~^(3,0)_{0,0}(0)
    StructuredScalar k = exact(ktilde_alpha({{c(0), c(0), c(-4)}, n5}, {0, 0, 0}));
    StructuredScalar t = exact(ttilde_coeff(3, 0, {c(0), c(0)}, n5, {0, 0, 0}));
    EXPECT_EQ(k, StructuredScalar::pi_half(4) * t);
}

TEST(TTilde, FirstSlotByCyclicRelabeling) {
    Ambient amb(5);
    const Rational& rho = amb.rho;
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10; ++i) {
        Rational x = random_rational(rng), y = random_rational(rng);
        long k = uniform(rng, 0, 3);
        GeometricParam g{{c(-(amb.n - 1) - 2 * k), CRational(x), CRational(y)}, amb};
        StructuredScalar constant = StructuredScalar(sign_power(k)) * StructuredScalar::pow2(q(-2 * k)) *
                                    StructuredScalar::pi_half(amb.n - 1) * rgamma_exact(rho + k) *
                                    rgamma_exact(rho + x / 2) * rgamma_exact(rho + y / 2);
        for (const auto& a : grid(3))
            ASSERT_EQ(exact(ktilde_alpha(g, a)), constant * exact(ttilde_coeff(1, k, {g.alpha[1], g.alpha[2]}, amb, a)));
    }
}

TEST(SFamily, DegreeVanishingAndOrigin) {
    for (int n : {4, 5, 6}) {
        Ambient amb(n);
        for (long k = 0; k <= 3; ++k) {
            SpectralParam p{{c(1, 3), c(-2, 7), CRational(-amb.rho - 2 * k) - c(1, 3) + c(2, 7)}, amb};
            EXPECT_TRUE(is_zero(s_coeff(k, p, {k + 1, 0, 0})));
            EXPECT_TRUE(is_zero(s_coeff(k, p, {0, 1, k})));
        }
        SpectralParam p0{{c(1, 3), c(-2, 7), CRational(-amb.rho) - c(1, 3) + c(2, 7)}, amb};
        StructuredScalar expected = StructuredScalar::pow2(3 * amb.rho) * StructuredScalar::pi_half(n - 1) *
                                    gamma_exact(amb.rho) * rgamma_exact(2 * amb.rho);
        EXPECT_EQ(exact(s_coeff(0, p0, {0, 0, 0})), expected);
    }
}

TEST(SFamily, RequiresItsPlane) {
    Ambient n5(5);
    EXPECT_THROW(s_coeff(1, {{c(0), c(0), c(0)}, n5}, {0, 0, 0}), ConstraintError);
}

TEST(SFamily, SymmetricUnderSimultaneousPermutation) {
    Ambient amb(5);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        long k = uniform(rng, 0, 4);
        CRational l1(random_rational(rng)), l2(random_rational(rng));
        CRational l3 = CRational(-amb.rho - 2 * k) - l1 - l2;
        for (const auto& a : grid(k)) {
            auto base = exact(s_coeff(k, {{l1, l2, l3}, amb}, a));
            ASSERT_EQ(base, exact(s_coeff(k, {{l2, l3, l1}, amb}, {a.a2, a.a3, a.a1})));
            ASSERT_EQ(base, exact(s_coeff(k, {{l2, l1, l3}, amb}, {a.a2, a.a1, a.a3})));
        }
    }
}

TEST(SFamily, NonzeroAtTopDegree) {
    Ambient amb(5);
    for (long k = 1; k <= 3; ++k) {
        SpectralParam p{{c(1, 3), c(-2, 7), CRational(-amb.rho - 2 * k) - c(1, 3) + c(2, 7)}, amb};
        EXPECT_FALSE(is_zero(s_coeff(k, p, {0, 0, k})));
    }
}

TEST(RFamily, NonzeroAtTheZ2IMultiIndex) {
    for (int n : {4, 5, 6, 7})
        for (long k2 = 0; k2 <= 2; ++k2)
            for (long k3 = 0; k3 <= 2; ++k3)
                for (long k1 = 0; k1 <= k2 + k3; ++k1) {
                    Ambient amb(n);
                    auto v = r_coeff(1, k1, {c(-(n - 1) - 2 * k2), c(-(n - 1) - 2 * k3)}, amb, {k2 + k3 - k1, 0, 0});
                    EXPECT_FALSE(is_zero(v)) << n << " " << k1 << k2 << k3;
                }
    EXPECT_THROW(r_coeff(3, -1, {c(0), c(0)}, Ambient(5), {0, 0, 0}), DomainError);
}

TEST(QFamily, VanishingRegions) {
    Ambient n5(5);
    Z2IIndices z{1, 1, 2};
    EXPECT_TRUE(is_zero(q_coeff(z, n5, {4, 2, 3})));  // a2 > k2 and a3 > k3
    EXPECT_TRUE(is_zero(q_coeff(z, n5, {4, 1, 2})));  // a2 + a3 <= k2 + k3
    EXPECT_FALSE(is_zero(q_coeff(z, n5, {4, 1, 3})));
    EXPECT_FALSE(is_zero(q_coeff(z, n5, {4, 2, 2})));
}

TEST(QFamily, IndexConversion) {
    Z2IIndices z = z2i_from_lm(1, 0, 1);
    EXPECT_EQ(z.k1, 1);
    EXPECT_EQ(z.k2, 0);
    EXPECT_EQ(z.k3, 1);
    EXPECT_THROW(z2i_from_lm(1, 1, 1), ConstraintError);
    EXPECT_THROW(q_coeff({3, 1, 1}, Ambient(5), {0, 0, 0}), ConstraintError);
}

TEST(Bernstein, PolynomialValues) {
    Ambient n5(5);
    EXPECT_EQ(bernstein_b_exact({{c(0), c(0), c(0)}, n5}), c(384));
    EXPECT_TRUE(bernstein_b_exact({{c(1, 3), c(5), c(-2)}, n5}).is_zero());
    EXPECT_TRUE(bernstein_b_exact({{c(1, 3), c(5), c(-8) - c(1, 3) - c(5)}, n5}).is_zero());
}

TEST(SphereScalars, Volumes) {
    Ambient n4(4);
    EXPECT_EQ(exact(sint1(c(0), n4)), StructuredScalar(2) * StructuredScalar::pi_half(4));
    for (int n : {4, 5, 6}) EXPECT_TRUE(is_zero(sint2(c(0), Ambient(n))));
}

TEST(SphereScalars, EOneOneInBothCoordinates) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 50; ++i) {
        Ambient amb(static_cast<int>(uniform(rng, 4, 7)));
        GeometricParam g{{CRational(random_rational(rng)), CRational(random_rational(rng)), CRational(random_rational(rng))},
                         amb};
        SpectralParam p = to_spectral(g);
        EXPECT_EQ(e_one_one(p.lambda[0], p.lambda[1], amb), e_one_one_alpha(g));
    }
}

TEST(SphereScalars, K111IsTheUnnormalizedIntegral) {
    Ambient amb(5);
    const Rational& rho = amb.rho;
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
        GeometricParam g{{CRational(generic_rational(rng)), CRational(generic_rational(rng)),
                          CRational(generic_rational(rng))},
                         amb};
        Rational s = g.alpha[0].re + g.alpha[1].re + g.alpha[2].re;
        StructuredScalar gammas = gamma_exact(s / 2 + 2 * rho);
        for (const auto& x : g.alpha) gammas = gammas * gamma_exact(x.re / 2 + rho);
        EXPECT_EQ(exact(k111(g)), exact(ktilde_alpha(g, {0, 0, 0})) * gammas);
    }
}

TEST(KSConstant, RecursionMatchesClosedForm) {
    for (int n : {4, 5, 6, 7})
        for (long k = 0; k <= 4; ++k) {
            Ambient amb(n);
            EXPECT_EQ(ks_constant_by_recursion(amb, k, q(1, 3)), ks_constant(amb, k)) << n << " " << k;
        }
}
