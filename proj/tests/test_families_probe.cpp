#include "trilinear/suites.hpp"

#include <gtest/gtest.h>

using namespace trilinear;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }
CRational c(long p, long d = 1) { return CRational(q(p, d)); }
Triple dir(long x, long y, long z) { return {c(x), c(y), c(z)}; }
GeometricParam alp(int n, long a, long b, long d) { return {{c(a), c(b), c(d)}, Ambient(n)}; }

Jet2<ExactSum> exact_jet(const ProbeSpec& probe, const MultiIndex& a) {
    return std::get<Jet2<ExactSum>>(taylor_probe(probe, a, EvalMode::Exact));
}

}  // namespace

TEST(Probe, ConstantTermIsTheCoefficient) {
    GeometricParam g{{c(1, 3), c(-2, 5), c(7, 4)}, Ambient(5)};
    ProbeSpec probe{g, dir(1, 2, 3)};
    for (const auto& a : grid(3)) {
        auto jet = exact_jet(probe, a);
        ASSERT_EQ(jet.c0, ExactSum(std::get<StructuredScalar>(ktilde_alpha(g, a))));
    }
}

TEST(Probe, FlatAlongALineOfZeros) {
    // two type I planes meet in the line alpha2 = alpha3 = -4
    GeometricParam g = alp(5, 1, -4, -4);
    ProbeSpec along_line{g, dir(1, 0, 0)};
    ProbeSpec transverse{g, dir(0, 1, 0)};
    bool moved = false;
    for (const auto& a : grid(3)) {
        auto j = exact_jet(along_line, a);
        ASSERT_TRUE(j.c0.is_zero());
        ASSERT_TRUE(j.c1.is_zero());
        ASSERT_TRUE(j.c2.is_zero());
        auto t = exact_jet(transverse, a);
        ASSERT_TRUE(t.c0.is_zero());
        moved = moved || !t.c1.is_zero();
    }
    EXPECT_TRUE(moved);
}

TEST(Probe, CoefficientsScaleWithTheDirection) {
    GeometricParam g = alp(5, 2, -4, -6);
    ProbeSpec unit{g, dir(1, -1, 2)}, twice{g, dir(2, -2, 4)};
    for (const auto& a : grid(3)) {
        auto u = exact_jet(unit, a), t = exact_jet(twice, a);
        ASSERT_EQ(t.c1, u.c1 * ExactSum(q(2)));
        ASSERT_EQ(t.c2, u.c2 * ExactSum(q(4)));
    }
}

TEST(Probe, ZeroDirectionRejected) {
    EXPECT_THROW(taylor_probe({alp(5, 0, 0, 0), dir(0, 0, 0)}, {0, 0, 0}), DomainError);
}

TEST(Probe, NumericJetTracksExactJet) {
    GeometricParam g = alp(4, 1, -3, -5);
    ProbeSpec probe{g, dir(0, 2, 1)};
    for (const auto& a : grid(2)) {
        auto e = exact_jet(probe, a);
        auto n = std::get<Jet2<BigC>>(taylor_probe(probe, a, EvalMode::Numeric));
        for (auto [x, y] : {std::pair{&e.c1, &n.c1}, std::pair{&e.c2, &n.c2}}) {
            if (x->is_zero()) continue;
            ASSERT_LT(relative_gap(x->to_bigc(256), *y), 1e-60);
        }
    }
}

TEST(Identities, SpotChecks) {
    Ambient n5(5), n4(4);
    EXPECT_TRUE(verify_kt(c(1, 3), c(-5, 7), 2, 4, n5).ok());
    EXPECT_TRUE(verify_ks(c(2, 3), c(1, 9), 1, 4, n4).ok());
    EXPECT_TRUE(verify_rk(c(-1, 5), c(3, 11), 2, 4, n5).ok());
    EXPECT_TRUE(verify_k0ints(c(1, 3), c(-5, 7), n4).ok());
}

TEST(DerivativeLemmas, OneInstanceEach) {
    EXPECT_TRUE(verify_derivative_lemma(DerivativeLemma::DerKT, {Ambient(5), q(1, 3), 0, 1, 2}, 4).ok());
    EXPECT_TRUE(verify_derivative_lemma(DerivativeLemma::KTZ2I, {Ambient(5), q(0), 1, 0, 1}, 4).ok());
    EXPECT_TRUE(verify_derivative_lemma(DerivativeLemma::DKZ2I, {Ambient(4), q(0), 2, 1, 2}, 4).ok());
    EXPECT_TRUE(verify_derivative_lemma(DerivativeLemma::KSZ2II, {Ambient(5), q(0), 1, 1, 3}, 4).ok());
    EXPECT_TRUE(verify_derivative_lemma(DerivativeLemma::DerKZ2II, {Ambient(4), q(0), 0, 1, 1}, 4).ok());
}

TEST(DerivativeLemmas, HypothesesEnforced) {
    // alpha1 on a type I plane
    EXPECT_THROW(verify_derivative_lemma(DerivativeLemma::DerKT, {Ambient(5), q(-4), 0, 0, 0}, 2), HypothesisError);
    // alpha1 even and at most 2(k2 + k3)
    EXPECT_THROW(verify_derivative_lemma(DerivativeLemma::DerKT, {Ambient(5), q(2), 0, 1, 0}, 2), HypothesisError);
    EXPECT_THROW(verify_derivative_lemma(DerivativeLemma::KTZ2I, {Ambient(5), q(0), 3, 1, 1}, 2), HypothesisError);
    EXPECT_THROW(verify_derivative_lemma(DerivativeLemma::KSZ2II, {Ambient(5), q(0), 1, 1, 1}, 2), HypothesisError);
}

TEST(QOracle, SecondOrderCoefficient) {
    EXPECT_TRUE(verify_q_oracle({Ambient(5), q(0), 1, 0, 1}, 5).ok());
    EXPECT_TRUE(verify_q_oracle({Ambient(6), q(0), 2, 1, 2}, 6).ok());
}

TEST(Bernstein, ChainAtAShiftPole) {
    EXPECT_TRUE(verify_bernstein_chain({{c(1, 3), c(2, 7), c(-2)}, Ambient(5)}).ok());
    EXPECT_TRUE(verify_bernstein_chain({{c(-5, 3), c(1, 2), c(3, 4)}, Ambient(4)}).ok());
}

TEST(Ranks, Examples) {
    SpectralParam off = to_spectral(GeometricParam{{c(1, 3), c(2, 5), c(-1, 7)}, Ambient(5)});
    EXPECT_EQ(rank_check({{FamilyKind::K, 3, 0}}, off, 2).rank, 1);

    for (auto [g, want] : {std::pair{alp(5, 1, -4, -4), 2L}, std::pair{alp(5, -4, -6, -4), 3L},
                           std::pair{alp(4, -3, -3, -3), 3L}, std::pair{alp(5, 2, -4, -6), 2L}}) {
        GeneratorSet gens = generators(to_spectral(g));
        ASSERT_EQ(static_cast<long>(gens.families.size()), want);
        RankReport r = rank_check(gens.families, gens.point, gens.k_sum + 6);
        EXPECT_EQ(r.rank, want) << to_string(gens.families.front());
    }
}

TEST(Ranks, AllZeroGridIsReported) {
    SpectralParam on_z = to_spectral(alp(5, 1, -4, -4));
    EXPECT_THROW(rank_check({{FamilyKind::K, 3, 0}}, on_z, 2), DegenerateGridError);
}

TEST(ZeroSet, OnAndOffZ) {
    EXPECT_TRUE(zero_set_check(to_spectral(alp(5, -4, -6, -4)), 5));
    EXPECT_TRUE(zero_set_check(to_spectral(alp(4, 1, -3, -5)), 5));
    EXPECT_FALSE(zero_set_check(to_spectral(GeometricParam{{c(1, 3), c(2, 5), c(-1, 7)}, Ambient(4)}), 2));
}

TEST(F1Pattern, EvenZ3Point) {
    F1Report r = f1_jet_vanishing_check(to_spectral(alp(5, -4, -6, -4)), 6);
    EXPECT_TRUE(r.ok());
    EXPECT_GT(r.nonzero_points, 0);
    EXPECT_THROW(f1_jet_vanishing_check(to_spectral(alp(4, -3, -3, -3)), 3), HypothesisError);
    EXPECT_THROW(f1_jet_vanishing_check(to_spectral(alp(5, 1, -4, -4)), 3), HypothesisError);
}
