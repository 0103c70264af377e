#include "trilinear/suites.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace trilinear;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }
CRational c(long p, long d = 1) { return CRational(q(p, d)); }

}  // namespace

TEST(System, LevelZeroHasNoEquations) {
    SolSystem s = build_system(c(1, 3), c(2, 5), 0, q(2));
    EXPECT_EQ(s.unknown_count(), 1u);
    EXPECT_TRUE(s.rows.empty());
    EXPECT_EQ(nullspace_dim(s).dim, 1);
}

TEST(System, UnknownLayout) {
    SolSystem s = build_system(c(0), c(0), 3, q(2));
    EXPECT_EQ(s.unknown_count(), 10u);
    for (std::size_t i = 0; i < s.unknowns.size(); ++i)
        EXPECT_EQ(s.column(s.unknowns[i].first, s.unknowns[i].second), std::optional<std::size_t>(i));
    EXPECT_FALSE(s.column(2, 2).has_value());
    EXPECT_FALSE(s.column(-1, 0).has_value());
    EXPECT_THROW(build_system(c(0), c(0), -1, q(2)), DomainError);
}

TEST(System, FirstEquationCoefficients) {
    CRational lam = c(1, 3), mu = c(2, 5);
    SolSystem s1 = build_system(lam, mu, 1, q(2));
    EXPECT_EQ(s1.rows.size(), 2u);
    EXPECT_EQ(s1.rows[0].at(*s1.column(1, 0)), CRational(4) * (CRational(1) + lam));
    EXPECT_EQ(s1.rows[0].at(*s1.column(0, 0)), CRational(2) * (CRational(q(2)) + mu));
    EXPECT_EQ(nullspace_dim(s1).dim, 1);

    SolSystem s2 = build_system(lam, mu, 2, q(2));
    // rows come in (E1, E2) pairs per (r, t); (1, 0) is the third pair
    EXPECT_EQ(s2.rows[4].at(*s2.column(2, 0)), CRational(8) * (CRational(2) + lam));
}

TEST(System, DimensionExamples) {
    Ambient n5(5);
    EXPECT_EQ(solve_dim(c(-1), c(-2), 4, n5), 1);
    EXPECT_EQ(solve_dim(c(-2), c(-3), 3, n5), 3);
    EXPECT_EQ(solve_dim(c(1, 3), c(2, 7), 3, n5), 1);
    EXPECT_EQ(nullspace_dim(build_system(c(-2), c(-3), 3, n5.rho)).principal.size(), 3u);
}

TEST(Table, PrintedCells) {
    Ambient n5(5);
    EXPECT_EQ(printed_dim(c(-2), c(-3), 3, n5)->dim, 3);
    EXPECT_EQ(printed_dim(c(-1), c(-2), 4, n5)->label, "E_k|E_k&E_k^rho|k1+k2<=k");
    EXPECT_EQ(printed_dim(c(1, 3), c(-2), 4, n5)->label, "generic");
    EXPECT_FALSE(printed_dim(CRational(q(1), q(1)), c(-2), 4, n5).has_value());
    EXPECT_EQ(table_entry(c(-2), 3, n5.rho).category, TableCategory::Both);
    EXPECT_EQ(table_entry(c(-3), 2, n5.rho).category, TableCategory::ShiftedOnly);
    EXPECT_EQ(table_entry(c(-3), 2, n5.rho).index, 1);
}

TEST(Table, DisplayedSystemReproducesTheTable) {
    for (int n = 4; n <= 7; ++n) {
        SolTable t = sol_table(Ambient(n), 4);
        EXPECT_TRUE(table_matches(t)) << n;
        EXPECT_GT(t.samples, 0);
    }
}

TEST(Table, ExhaustiveSupportMatches) {
    SolTable t = sol_table(Ambient(6), 5, exhaustive_sampler);
    EXPECT_TRUE(table_matches(t));
}

// Frozen regression: the variant with g = k - r in the second equation disagrees with the table.
TEST(Table, ProofVariantDisagrees) {
    bool any = false;
    for (int n = 4; n <= 7 && !any; ++n)
        any = !table_matches(sol_table(Ambient(n), 4, support_and_generic_sampler(), SystemVariant::ProofVariant, false));
    EXPECT_TRUE(any);
}

TEST(Symmetry, NullityIsPermutationInvariant) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 60; ++i) {
        Ambient amb(static_cast<int>(uniform(rng, 4, 7)));
        long k = uniform(rng, 0, 5);
        CRational l1 = uniform(rng, 0, 1) ? CRational(-uniform(rng, 1, k + 1)) : CRational(generic_rational(rng));
        CRational l2 = uniform(rng, 0, 1) ? CRational(-amb.rho - uniform(rng, 0, k)) : CRational(generic_rational(rng));
        EXPECT_TRUE(symmetry_check(l1, l2, k, amb)) << to_string(l1) << " " << to_string(l2) << " " << k;
    }
}

TEST(TriDims, Examples) {
    Ambient n5(5);
    SpectralParam diag{{c(-3), c(-3), c(-4)}, n5};
    EXPECT_EQ(diagonal_level(diag), std::optional<long>(4));
    EXPECT_EQ(dim_tri_diag(diag), 3);
    EXPECT_EQ(dim_tri(diag), 3);

    SpectralParam off{{c(1, 3), c(1, 7), c(1, 11)}, n5};
    EXPECT_EQ(dim_tri(off), 1);
    EXPECT_EQ(dim_tri_diag(off), 0);

    EXPECT_EQ(dim_tri(to_spectral(GeometricParam{{c(2), c(-4), c(-6)}, n5})), 2);
}
