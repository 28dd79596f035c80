#include "pwb/errors.hpp"
#include "pwb/quadrature.hpp"
#include "pwb/random.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace pwb;

TEST(WeightedHump, EmptyAndReversed) {
    EXPECT_EQ(weighted_hump(1.3, 1.3, 0, Exponent(3), {}), 0.0);
    EXPECT_THROW(weighted_hump(1.3, 1.2, 0, Exponent(3), {}), DomainError);
}

TEST(WeightedHump, LimitAtZero) {
    for (double p : {2.0, 3.0, 5.0}) EXPECT_NEAR(hump_integrand(0.0, 0.0, p), p * p / 4, 1e-14);
    EXPECT_NEAR(hump_integrand(1e-9, 0.0, 3.0), 2.25, 1e-9);
}

TEST(WeightedHump, SincSquareOnUnitInterval) {
    const double simpson = oracle::simpson([](double x) { return oracle::hump(x, 0, 2); }, 0, 1, 1000000);
    const double v = weighted_hump(0, 1, 0, Exponent(2), {});
    EXPECT_NEAR(v, simpson, 1e-10);
    EXPECT_NEAR(v, 0.4514116667901403134, 1e-12);
}

TEST(WeightedHump, AgreesWithSimpsonOnRandomTuples) {
    Rng rng(5);
    const QuadSettings s;
    for (int t = 0; t < 100; ++t) {
        const double p = rng.uniform(2, 6);
        const long n = rng.integer(0, 5);
        const double a = rng.uniform(0.2, 6), b = a + rng.uniform(0, 2);
        const double want = oracle::simpson([&](double x) { return oracle::hump(x, n, p); }, a, b, 20000);
        EXPECT_NEAR(weighted_hump(a, b, n, Exponent(p), s), want, 2 * s.abs_tol) << p << " " << n << " " << a;
    }
}

TEST(WeightedHump, Additive) {
    Rng rng(6);
    const QuadSettings s;
    for (int t = 0; t < 50; ++t) {
        const double p = rng.uniform(2, 6);
        const long n = rng.integer(0, 5);
        const double a = rng.uniform(0.1, 4), b = a + rng.uniform(0, 1), c = b + rng.uniform(0, 1);
        const Exponent e(p);
        EXPECT_NEAR(weighted_hump(a, c, n, e, s), weighted_hump(a, b, n, e, s) + weighted_hump(b, c, n, e, s),
                    2 * s.abs_tol);
    }
}

TEST(HumpMass, ReciprocalOfP) {
    EXPECT_NEAR(hump_mass(2), 0.5, 1e-15);
    EXPECT_NEAR(hump_mass(4), 0.25, 1e-15);
    EXPECT_NEAR(hump_mass(5), 0.2, 1e-15);
    for (double p = 2; p <= 6; p += 0.37) {
        EXPECT_NEAR(hump_mass(p) * p, 1.0, 1e-14);
        const double direct = oracle::simpson(
            [&](double u) { return std::pow(std::sin(0.5 * p * oracle::pi * u), 2); }, 0, 2 / p, 2000);
        EXPECT_NEAR(hump_mass(p), direct, 1e-12);
    }
}

TEST(LevelSeries, WholeHalfLineAtTwo) {
    const LevelTerm t{0.0, 1.0, 1.0, 0.0, 1.0, Shape::SinSquared};
    const Bracket b = level_series(t, Exponent(2), {});
    EXPECT_TRUE(b.contains(0.5)) << b.lo << " " << b.hi;
    EXPECT_LT(b.width(), 1e-7);
    EXPECT_NEAR(b.mid(), oracle::sinc2_half_line(200, 4000000), 1e-7);
}

TEST(LevelSeries, EmptyTermsGiveZero) {
    const LevelTerm t{1.0, 0.0, 1.0, 0.0, 1.0, Shape::SinSquared};
    const Bracket b = level_series(t, Exponent(3), {});
    EXPECT_EQ(b.lo, 0.0);
    EXPECT_EQ(b.hi, 0.0);
}

TEST(LevelSeries, LargerCutoffNests) {
    const double p = 3;
    const LevelTerm t{0.0, 2 / p, 1.0, 0.0, 1.0, Shape::SinSquared};
    QuadSettings coarse, fine;
    coarse.tail_level_cutoff = 1000;
    fine.tail_level_cutoff = 10000;
    const Bracket a = level_series(t, Exponent(p), coarse);
    const Bracket b = level_series(t, Exponent(p), fine);
    EXPECT_LE(a.lo, b.lo + 1e-12);
    EXPECT_GE(a.hi, b.hi - 1e-12);
    EXPECT_LE(b.width(), a.width() + 1e-15);
}

TEST(Integrate, ConvergenceErrorCarriesBestEstimate) {
    try {
        (void)integrate([](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0, 1e-16, 0.0, 3);
        FAIL() << "expected a convergence error";
    } catch (const ConvergenceError& e) {
        EXPECT_NEAR(e.best_estimate(), 2.0, 0.5);
        EXPECT_GT(e.error_estimate(), 0.0);
    }
}

TEST(Integrate, Polynomial) {
    const Estimate e = integrate([](double x) { return x * x * x - 2 * x; }, -1.0, 2.0, 1e-14, 0.0, 50);
    EXPECT_NEAR(e.value, 15.0 / 4 - 3.0, 1e-13);
}
