#include "trilinear/suites.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace trilinear;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }
CRational c(long p, long d = 1) { return CRational(q(p, d)); }

SpectralParam lam(const Ambient& amb, CRational a, CRational b, CRational d) { return {{a, b, d}, amb}; }
GeometricParam alp(const Ambient& amb, long a, long b, long d) { return {{c(a), c(b), c(d)}, amb}; }

}  // namespace

TEST(Ambient, RejectsSmallDimension) {
    EXPECT_THROW(Ambient(3), DomainError);
    EXPECT_EQ(Ambient(4).rho, q(3, 2));
    EXPECT_FALSE(Ambient(4).even());
    EXPECT_TRUE(Ambient(5).even());
}

TEST(Coordinates, SpectralToGeometric) {
    Ambient n4(4);
    GeometricParam g = to_geometric(lam(n4, c(1), c(1), c(1)));
    for (const auto& x : g.alpha) EXPECT_EQ(x, c(-1, 2));
    // lambda1 = -rho-l, sum = -rho-2k gives alpha1 = 2(l-k)
    EXPECT_EQ(to_geometric(lam(n4, c(-7, 2), c(5), c(-5))).alpha[0], c(2));
}

TEST(Coordinates, RoundTrip) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        Ambient amb(static_cast<int>(uniform(rng, 4, 9)));
        SpectralParam p = lam(amb, CRational(random_rational(rng), random_rational(rng)), CRational(random_rational(rng)),
                              CRational(random_rational(rng)));
        EXPECT_EQ(to_spectral(to_geometric(p)).lambda, p.lambda);
    }
}

TEST(Lines, Admissibility) {
    EXPECT_TRUE(admissible(-1, 1, 2, 0));
    EXPECT_FALSE(admissible(-1, 1, 2, 1));
    EXPECT_FALSE(admissible(1, 3, 1, -3));
}

TEST(Lines, Membership) {
    Ambient n4(4);
    EXPECT_TRUE(line_contains({-1, 1, 0, 0}, lam(n4, c(-3, 2), c(1, 4), c(1, 4))));
    EXPECT_TRUE(line_contains({1, 1, 2, 0}, lam(n4, CRational(-n4.rho - 2), c(1), c(-1))));
    EXPECT_FALSE(line_contains({-1, 1, 0, 0}, lam(n4, c(0), c(0), c(0))));
}

TEST(Lines, ThroughAPoint) {
    Ambient n5(5), n4(4);
    EXPECT_TRUE(lines_through(lam(n4, c(1, 3), c(1, 7), c(1, 11))).empty());
    EXPECT_EQ(lines_through(lam(n5, c(-3), c(-2), c(-3))).size(), 3u);
    auto through = lines_through(lam(n4, CRational(-n4.rho - 2), c(1), c(-1)));
    EXPECT_GE(through.size(), 2u);
    EXPECT_NE(std::find(through.begin(), through.end(), Line{1, 1, 2, 0}), through.end());
    EXPECT_NE(std::find(through.begin(), through.end(), Line{-1, 1, 2, 2}), through.end());
    EXPECT_TRUE(std::is_sorted(through.begin(), through.end()));
}

TEST(Lines, Intersections) {
    Ambient n4(4);
    auto p = intersect_lines({1, 1, 2, 0}, {-1, 1, 2, 2}, n4);
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(p->lambda, (Triple{CRational(-n4.rho - 2), c(1), c(-1)}));
    EXPECT_FALSE(intersect_lines({-1, 1, 2, 0}, {-1, 1, 4, 2}, n4).has_value());
    EXPECT_FALSE(intersect_lines({-1, 1, 1, -1}, {-1, 2, 1, -1}, n4).has_value());
}

TEST(Lines, IntersectionPointsLieOnBothLines) {
    for (int n : {4, 5}) {
        Ambient amb(n);
        std::vector<Line> lines;
        for (int eps : {-1, 1})
            for (int j = 1; j <= 3; ++j)
                for (long l = 0; l <= 4; ++l)
                    for (long m = -l; m <= l; m += 2) lines.push_back({eps, j, l, m});
        for (std::size_t i = 0; i < lines.size(); ++i)
            for (std::size_t k = i + 1; k < lines.size(); ++k) {
                auto fast = intersect_lines(lines[i], lines[k], amb);
                auto brute = detail::solve_line_pair(lines[i], lines[k], amb);
                ASSERT_EQ(fast.has_value(), brute.has_value()) << to_string(lines[i]) << " " << to_string(lines[k]);
                if (!fast) continue;
                EXPECT_TRUE(line_contains(lines[i], *fast));
                EXPECT_TRUE(line_contains(lines[k], *fast));
            }
    }
}

TEST(Strata, Examples) {
    Ambient n5(5);
    Stratum z3 = classify_stratum(to_spectral(alp(n5, -4, -6, -4)));
    EXPECT_EQ(z3.tag, StratumTag::Z3);
    EXPECT_EQ(z3.witness.integer("l1"), 1);
    EXPECT_EQ(z3.witness.integer("l2"), 0);
    EXPECT_EQ(z3.witness.integer("l3"), 1);

    EXPECT_EQ(classify_stratum(to_spectral(alp(n5, 1, -4, -4))).tag, StratumTag::Z1_I);

    Stratum z2 = classify_stratum(to_spectral(alp(n5, 2, -4, -6)));
    EXPECT_EQ(z2.tag, StratumTag::Z2_I);
    EXPECT_EQ(z2.witness.integer("k1"), 1);
    EXPECT_EQ(z2.witness.integer("k2"), 0);
    EXPECT_EQ(z2.witness.integer("k3"), 1);
    EXPECT_EQ(z2.witness.integer("l1"), 1);
    EXPECT_EQ(z2.witness.integer("m2"), 0);
    EXPECT_EQ(z2.witness.integer("m3"), 1);

    EXPECT_EQ(classify_stratum(lam(n5, c(0), c(0), c(0))).tag, StratumTag::NotInZ);
}

TEST(Strata, ComplexCoordinatesLeaveZ) {
    Ambient n5(5);
    SpectralParam p = lam(n5, CRational(q(-3), q(1, 2)), c(-2), c(-3));
    EXPECT_EQ(classify_stratum(p).tag, StratumTag::NotInZ);
}

TEST(Strata, LinesMatchAndPermutationsPreserveTag) {
    const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}}};
    for (int n : {4, 5}) {
        for (const auto& p : z_points(Ambient(n), 3)) {
            Stratum s = classify_stratum(p);
            ASSERT_EQ(s.lines, lines_through(p));
            ASSERT_EQ(s.tag, classify_closed_form(to_geometric(p)));
            // cyclic shifts keep the tag; transpositions may swap line types but keep the count
            for (std::size_t k = 1; k < perms.size(); ++k) {
                SpectralParam r = p;
                for (int i = 0; i < 3; ++i) r.lambda[static_cast<std::size_t>(i)] = p.lambda[static_cast<std::size_t>(perms[k][static_cast<std::size_t>(i)])];
                StratumTag t = classify_stratum(r).tag;
                if (k < 3 || s.tag == StratumTag::Z3) {
                    ASSERT_EQ(t, s.tag);
                }
                ASSERT_EQ(classify_stratum(r).lines.size(), s.lines.size());
            }
        }
    }
}

TEST(PoleProfile, Examples) {
    Ambient n5(5), n4(4);
    PoleProfile a = pole_profile(alp(n5, 2, -4, -6));
    EXPECT_EQ(a.type_one_planes, (std::vector<std::pair<int, long>>{{2, 0}, {3, 1}}));
    EXPECT_EQ(a.type_two_plane, std::optional<long>(0));

    PoleProfile b = pole_profile(alp(n5, -4, -4, -4));
    EXPECT_EQ(b.type_one_planes.size(), 3u);
    EXPECT_EQ(b.type_two_plane, std::optional<long>(2));

    PoleProfile d = pole_profile(alp(n4, -3, -3, -3));
    EXPECT_EQ(d.type_one_planes.size() + (d.type_two_plane ? 1u : 0u), 3u);

    EXPECT_EQ(pole_profile(alp(n5, 1, 1, 1)).label, "not a pole");
}
