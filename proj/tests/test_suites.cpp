#include "trilinear/suites.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace trilinear;

TEST(ParallelMap, PreservesIndexOrder) {
    for (int jobs : {1, 2, 5}) {
        auto out = parallel_map(37, jobs, [](std::size_t i) { return i * i; });
        ASSERT_EQ(out.size(), 37u);
        for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
    }
    EXPECT_TRUE(parallel_map(0, 4, [](std::size_t i) { return i; }).empty());
}

TEST(ParallelMap, RethrowsWorkerExceptions) {
    auto boom = [](std::size_t i) -> int {
        if (i == 7) throw std::runtime_error("seven");
        return 0;
    };
    EXPECT_THROW(parallel_map(20, 3, boom), std::runtime_error);
}

TEST(ParallelMap, WorkersInheritPrecision) {
    PrecisionScope scope(512);
    auto out = parallel_map(6, 3, [](std::size_t) { return default_precision(); });
    for (long p : out) EXPECT_EQ(p, 512);
}

TEST(Sampling, SeededStreamsAreReproducible) {
    auto a = sample_rng(7, "kt", 3), b = sample_rng(7, "kt", 3), c = sample_rng(7, "kt", 4), d = sample_rng(8, "kt", 3);
    auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
    EXPECT_NE(x, d());
}

TEST(Sampling, GenericRationalsAvoidSmallDenominators) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) EXPECT_GT(generic_rational(rng).get_den(), 2);
}

TEST(Suites, ReportsDoNotDependOnJobCount) {
    for (const std::string name : {"kt", "bernstein", "symmetry"}) {
        SuiteConfig one;
        one.samples = 12;
        SuiteConfig three = one;
        three.jobs = 3;
        VerifyReport a = run_suite(name, one), b = run_suite(name, three);
        EXPECT_TRUE(a.ok()) << name;
        EXPECT_EQ(a.checks, b.checks) << name;
        EXPECT_EQ(a.failures, b.failures) << name;
        EXPECT_EQ(a.details, b.details) << name;
    }
}

TEST(Suites, MergeAccumulates) {
    VerifyReport a{"x"}, b{"x"};
    a.checks = 3;
    b.checks = 2;
    b.fail("bad");
    b.max_relative_error = 1e-50;
    VerifyReport m = merge_all("x", {a, b});
    EXPECT_EQ(m.checks, 5);
    EXPECT_EQ(m.failures, 1);
    EXPECT_EQ(m.details.size(), 1u);
    EXPECT_DOUBLE_EQ(m.max_relative_error, 1e-50);
    EXPECT_FALSE(m.ok());
    EXPECT_FALSE(VerifyReport{"empty"}.ok());
}

TEST(Suites, NamesDispatch) {
    EXPECT_EQ(suite_names().size(), 13u);
    EXPECT_THROW(run_suite("nope", SuiteConfig{}), std::invalid_argument);
}
