#include "pwb/bounds.hpp"
#include "pwb/errors.hpp"
#include "pwb/objective.hpp"
#include "pwb/random.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace pwb;

namespace {

ZeroSequence lambda_low(double p, std::size_t count = 8) { return ZeroSequence::shifted_integers(2 / p - 1, count); }

// ∫_0^r max(0, K)² by Simpson on every piece between stripe ends and sine zeros
double truncated_oracle(const ZeroSequence& tau, double p, double r) {
    double total = 0.0;
    for (std::size_t n = 0; tau[n] < r; ++n) {
        const double a = tau[n], b = std::min(tau[n + 1], r);
        std::vector<double> cuts{a, b};
        for (double z = n + 2 * std::floor((a - n) * p / 2) / p; z < b; z += 2 / p)
            if (z > a) cuts.push_back(z);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 1; i < cuts.size(); ++i)
            total += oracle::simpson([&](double x) { return oracle::positive_hump(x, n, p); }, cuts[i - 1], cuts[i],
                                     400);
    }
    return total;
}

ZeroSequence random_feasible(Rng& rng, double d1, double d2, std::size_t count) {
    std::vector<double> t;
    double x = d1 + rng.uniform(0, 0.4);
    for (std::size_t n = 1; n <= count; ++n) {
        t.push_back(std::min(x, static_cast<double>(n)));
        x = t.back() + d2 + rng.uniform(0, 1 - d2);
    }
    return ZeroSequence(t, 1.0);
}

}  // namespace

TEST(Membership, LambdaInSeparatedFamily) {
    EXPECT_TRUE(validate_membership(lambda_low(3), SeparationParams{2 / oracle::pi, 2.0 / 3}).ok());
}

TEST(Membership, FirstTermTooSmall) {
    const auto r = validate_membership(ZeroSequence({0.1, 1.1}, 1.0), SeparationParams{2 / oracle::pi, 2.0 / 3});
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.violation->index, 1u);
}

TEST(Membership, GapTooSmall) {
    const auto r = validate_membership(ZeroSequence({0.7, 1.2, 2.2}, 1.0), SeparationParams{2 / oracle::pi, 2.0 / 3});
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.violation->index, 1u);  // the gap τ₂ − τ₁
    EXPECT_FALSE(validate_membership(ZeroSequence({0.7}, 0.5), SeparationParams{0.6, 0.6}).ok());
}

TEST(Membership, GapEqualToBoundIsFeasible) {
    EXPECT_TRUE(validate_membership(ZeroSequence({0.5, 1.1, 1.7}, 0.6), SeparationParams{0.5, 0.6}).ok());
}

TEST(Membership, LambdaInReducedFamilies) {
    EXPECT_TRUE(validate_membership(lambda_low(3.5), FirstReducedFamily{3.5}).ok());
    EXPECT_TRUE(validate_membership(lambda_low(3.5), SecondReducedFamily{3.5}).ok());
    EXPECT_TRUE(validate_membership(lambda_low(3.8), SecondReducedFamily{3.8}).ok());
}

TEST(Membership, SecondFamilyNeedsFirstTermAtRightEndpoint) {
    const ZeroSequence t({0.7, 1.7, 2.7}, 1.0);
    EXPECT_TRUE(validate_membership(t, FirstReducedFamily{3.5}).ok());
    EXPECT_FALSE(validate_membership(t, SecondReducedFamily{3.5}).ok());
}

TEST(Ep, SincSquareHalfLine) {
    const Bracket b = ep(ZeroSequence::shifted_integers(0, 5), Exponent(2));
    EXPECT_TRUE(b.contains(0.5)) << b.lo << " " << b.hi;
    EXPECT_LT(b.width(), 1e-7);
}

TEST(Ep, TruncatedAgreesWithSimpsonOracle) {
    Rng rng(21);
    for (int t = 0; t < 12; ++t) {
        const double p = rng.uniform(2, 6);
        const ZeroSequence tau = random_feasible(rng, 0.5, 0.6, 6);
        const double r = rng.uniform(1, 9);
        EXPECT_NEAR(ep_truncated(tau, Exponent(p), r).value, truncated_oracle(tau, p, r), 1e-9) << p << " " << r;
    }
}

TEST(Ep, TruncatedBelowZeroIsEmpty) {
    EXPECT_EQ(ep_truncated(lambda_low(3), Exponent(3), 0.0).value, 0.0);
    EXPECT_EQ(ep_truncated(lambda_low(3), Exponent(3), -1.0).value, 0.0);
}

TEST(Ep, LevelBreakdownSumsToTotal) {
    const ZeroSequence tau({0.7, 1.5, 2.3}, 1.0);
    const Exponent p(3);
    const double r = tau[30];
    double sum = 0.0;
    for (std::size_t n = 0; tau[n + 1] <= r; ++n) sum += ep_level(tau, n, p).value;
    EXPECT_NEAR(sum, ep_truncated(tau, p, r).value, 1e-10);
}

TEST(Ep, MaximizersMatchClosedForms) {
    const Bracket high = ep(ZeroSequence::shifted_integers(0.1, 8), Exponent(5));
    const Bracket closed_high = sup_value_high(Exponent(5), {0.5, 0.6});
    EXPECT_TRUE(high.overlaps(closed_high));
    EXPECT_NEAR(high.mid(), 1.1827840191802970955, 1e-9);
    const Bracket low = ep(ZeroSequence::shifted_integers(-1.0 / 3, 8), Exponent(3));
    EXPECT_TRUE(low.overlaps(sup_value_low(Exponent(3), {2 / oracle::pi, 2.0 / 3})));
}

TEST(Ep, ConstantAtFour) {
    Rng rng(4);
    const Bracket ref = ep(ZeroSequence::shifted_integers(0, 4), Exponent(4));
    for (int t = 0; t < 10; ++t) {
        const Bracket b = ep(random_feasible(rng, 0.3, 0.3, 5), Exponent(4));
        EXPECT_NEAR(b.mid(), ref.mid(), 2 * (b.width() + ref.width()) + 1e-12);
    }
}

TEST(Ep, DifferenceMatchesTruncatedComparison) {
    // tightening one zero below the midpoint, compared with and without shared tails
    const ZeroSequence a({0.625, 1.625, 2.3, 2.9667, 3.375}, 1.0);
    const ZeroSequence b({0.625, 1.625, 2.625, 3.3, 3.9667}, 1.0);
    const Exponent p(3.2);
    const double r = 2 + 3 - 2 / 3.2;
    const double direct = ep_truncated(b, p, r).value - ep_truncated(a, p, r).value;
    EXPECT_NEAR(ep_truncated_difference(a, b, p, r).value, direct, 1e-11);
    EXPECT_GT(direct, 0.0);
}

TEST(LocalObjective, LowRegimeExtremes) {
    for (double p : {2.5, 3.0, 3.5}) {
        const Exponent e(p);
        const double xi = 2.0;
        const double left = xi + 1 - 4 / p;
        const double top = s_local(left, xi, 2, e, Regime::Low).value;
        const double mid = s_local(midpoint(xi, e), xi, 2, e, Regime::Low).value;
        for (double t = left; t <= xi + 1; t += 0.01) {
            const double v = s_local(t, xi, 2, e, Regime::Low).value;
            EXPECT_LE(v, top + 1e-12) << p << " " << t;
            if (t <= xi + 2 / p) EXPECT_GE(v, mid - 1e-12) << p << " " << t;
        }
    }
}

TEST(LocalObjective, HighRegimeMaximumAtMidpoint) {
    for (double p : {4.5, 5.0, 5.5}) {
        const Exponent e(p);
        const double xi = 1.0;
        const double top = s_local(midpoint(xi, e), xi, 1, e, Regime::High).value;
        for (double t = xi; t <= xi + 4 / p; t += 0.005)
            EXPECT_LE(s_local(t, xi, 1, e, Regime::High).value, top + 1e-12) << p << " " << t;
    }
}

TEST(LocalObjective, RejectsOutOfRange) {
    EXPECT_THROW(s_local(5.0, 2.0, 2, Exponent(3), Regime::Low), DomainError);
    EXPECT_THROW(s_local(2.5, 2.1, 2, Exponent(3), Regime::Low), DomainError);
    EXPECT_THROW(s_local(2.5, 2.0, 2, Exponent(5), Regime::Low), DomainError);
}

TEST(Rays, LowRegimeGeometry) {
    const auto r = ray_intervals({1, Regime::Low}, Exponent(3), 2);
    ASSERT_EQ(r.size(), 3u);
    const double starts[] = {1, 5.0 / 3, 7.0 / 3};
    const long levels[] = {1, 3, 5};
    for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_NEAR(r[j].interval.xi, starts[j], 1e-12);
        EXPECT_EQ(r[j].interval.level, levels[j]);
    }
}

TEST(Rays, HighRegimeGeometry) {
    const auto r1 = ray_intervals({1, Regime::High}, Exponent(5), 0);
    ASSERT_EQ(r1.size(), 1u);
    EXPECT_NEAR(r1[0].interval.xi, 0.8, 1e-12);
    EXPECT_EQ(r1[0].interval.level, 0);
    const auto r0 = ray_intervals({0, Regime::High}, Exponent(5), 1);
    ASSERT_EQ(r0.size(), 1u);
    EXPECT_EQ(r0[0].j, 1);
    EXPECT_NEAR(r0[0].interval.xi, 0.0, 1e-12);
    EXPECT_EQ(r0[0].interval.level, 0);
}

TEST(Rays, FirstHighRayIsTheFirstHump) {
    const double want =
        oracle::simpson([](double x) { return oracle::hump(x, 0, 5); }, 0, 0.4, 200000);
    const Bracket b = ray_contribution(ZeroSequence::shifted_integers(0.1, 6), {0, Regime::High}, Exponent(5));
    EXPECT_NEAR(b.mid(), want, 1e-10);
}

TEST(Rays, EmptyRayInIllustratedSequence) {
    // the illustration only fixes τ₉ ≥ 22/5; ray 3 meets stripe 9 on (4.2, 5) unless τ₉ ≥ 5
    const ZeroSequence tau({0.3, 0.8, 1.3, 1.8, 2.5, 2.9, 3.4, 3.8, 5.0}, 1.0);
    const Bracket b = ray_contribution(tau, {3, Regime::Low}, Exponent(2.5));
    EXPECT_EQ(b.lo, 0.0);
    EXPECT_EQ(b.hi, 0.0);
}

TEST(Rays, SumEqualsObjective) {
    Rng rng(8);
    for (int t = 0; t < 5; ++t) {
        const double p = rng.uniform(2.1, 4);
        const ZeroSequence tau = random_feasible(rng, 2 / oracle::pi, 2.0 / 3, 5);
        const Bracket e = ep(tau, Exponent(p)), r = ray_sum(tau, Regime::Low, Exponent(p));
        EXPECT_NEAR(e.mid(), r.mid(), e.width() + r.width() + 1e-12);
    }
    for (int t = 0; t < 5; ++t) {
        const double p = rng.uniform(4, 5);
        const ZeroSequence tau = random_feasible(rng, 1 - 2 / p, 0.6, 5);
        const Bracket e = ep(tau, Exponent(p)), r = ray_sum(tau, Regime::High, Exponent(p));
        EXPECT_NEAR(e.mid(), r.mid(), e.width() + r.width() + 1e-12);
    }
}
