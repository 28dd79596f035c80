#include "pwb/bounds.hpp"
#include "pwb/errors.hpp"
#include "pwb/objective.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace pwb;

namespace {

const SeparationParams low_d{2 / oracle::pi, 2.0 / 3};
const SeparationParams high_d{0.5, 0.6};

void expect_value(const Bracket& b, double want, double tol = 1e-9) {
    EXPECT_NEAR(b.mid(), want, tol) << "[" << b.lo << ", " << b.hi << "]";
    EXPECT_LT(b.width(), 1e-7);
}

}  // namespace

// Reference values computed independently at 30 digits.
TEST(SupValue, LowRegimeReferenceValues) {
    expect_value(sup_value_low(Exponent(2), low_d), 0.5);
    expect_value(sup_value_low(Exponent(2.5), low_d), 0.60662315913309175354);
    expect_value(sup_value_low(Exponent(3), low_d), 0.71467188725979363658);
    expect_value(sup_value_low(Exponent(3.5), low_d), 0.82370447704676744575);
    expect_value(sup_value_low(Exponent(4), low_d), 0.93344549597951897213);
}

TEST(SupValue, HighRegimeReferenceValues) {
    expect_value(sup_value_high(Exponent(4), high_d), 0.93344549597951897213);
    expect_value(sup_value_high(Exponent(4.5), high_d), 1.0601952947144557318);
    expect_value(sup_value_high(Exponent(5), high_d), 1.1827840191802970955);
    expect_value(sup_value_high(Exponent(6), {2.0 / 3, 2.0 / 3}), 1.4134966715663440371);
    EXPECT_THROW(sup_value_high(Exponent(6), high_d), RangeError);
}

TEST(SupValue, SincSquareAtTwo) {
    EXPECT_TRUE(sup_value_low(Exponent(2), {1, 1}).contains(0.5));
}

TEST(SupValue, EqualsObjectiveAtMaximizer) {
    const Bracket s = sup_value_low(Exponent(3), low_d);
    const Bracket e = ep(ZeroSequence::shifted_integers(-1.0 / 3, 6), Exponent(3));
    EXPECT_NEAR(s.mid(), e.mid(), s.width() + e.width() + 1e-12);
}

TEST(SupValue, RangeErrorsNameTheHypothesis) {
    EXPECT_THROW(sup_value_low(Exponent(4.5), low_d), RangeError);
    EXPECT_THROW(sup_value_high(Exponent(3.5), high_d), RangeError);
    EXPECT_THROW(sup_value_low(Exponent(3), {0.3, 2.0 / 3}), RangeError);
    try {
        sup_value_low(Exponent(3), {2 / oracle::pi, 0.5});
        FAIL();
    } catch (const RangeError& e) {
        EXPECT_NE(std::string(e.what()).find("delta"), std::string::npos) << e.what();
    }
}

TEST(CpUpper, SharpAtTwo) {
    const BoundResult r = cp_upper(2);
    EXPECT_NEAR(r.value.lo, 1.0, 1e-8);
    EXPECT_NEAR(r.value.hi, 1.0, 1e-8);
    EXPECT_NEAR(r.ratio_to_p.mid(), 0.5, 1e-8);
}

TEST(CpUpper, BranchesMeetAtFour) {
    const BoundResult lo = cp_upper_via(4, Method::CorollaryLow);
    const BoundResult hi = cp_upper_via(4, Method::CorollaryHigh);
    EXPECT_TRUE(lo.value.overlaps(hi.value));
    EXPECT_LT(std::fabs(lo.value.mid() - hi.value.mid()), 1e-9);
    EXPECT_NO_THROW(cp_upper(4));
}

TEST(CpUpper, BelowEarlierBounds) {
    for (double p : {2.5, 3.0, 3.5, 4.5, 5.0}) {
        const BoundResult r = cp_upper(p);
        EXPECT_LT(r.value.hi, p / 2);
        EXPECT_LT(r.value.hi, cp_reference(p, Method::Brevig).value.lo) << p;
    }
    EXPECT_THROW(cp_upper(5.5), RangeError);
    EXPECT_THROW(cp_upper(1.5), RangeError);
}

TEST(Reference, SimpleBounds) {
    EXPECT_EQ(cp_reference(3, Method::HalfP).value.mid(), 1.5);
    EXPECT_EQ(cp_reference(4.2, Method::PowerTrickCeil).value.mid(), 3.0);
    EXPECT_THROW(cp_reference(3, Method::CorollaryLow), DomainError);
}

TEST(Reference, BrevigValues) {
    expect_value(brevig_bound(2), 1.0);
    expect_value(brevig_bound(2.5), 1.2270240142161516516);
    expect_value(brevig_bound(3), 1.4535147132252368878);
    expect_value(brevig_bound(4), 1.9057679876259409443);
    EXPECT_THROW(brevig_bound(4.5), RangeError);
}

TEST(Reference, PowerTrickJumpsAtFour) {
    const double at4 = cp_reference(4, Method::Brevig).value.mid();
    const double after = cp_reference(4 + 1e-9, Method::Brevig).value.mid();
    EXPECT_NEAR(after, 2.0, 1e-6);
    EXPECT_GT(after - at4, 0.09);
}

TEST(Figure, SingleRowAtTwo) {
    const auto rows = figure1_table(2, 2.005, 0.01);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].p, 2.0);
    EXPECT_NEAR(rows[0].new_over_p.mid(), 0.5, 1e-8);
    EXPECT_NEAR(rows[0].reference_over_p, 0.5, 1e-8);
}

TEST(Figure, CsvSchema) {
    const std::string csv = figure1_csv(figure1_table(3, 3.02, 0.01));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,new_over_p_lo,new_over_p_hi,brevig_over_p");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
    EXPECT_NE(csv.find("\n3.01,0.47"), std::string::npos) << csv;
}

TEST(Figure, NewBelowReference) {
    for (const auto& r : figure1_table(2.05, 5, 0.05)) {
        EXPECT_LT(r.new_over_p.hi, 0.5) << r.p;
        EXPECT_LT(r.new_over_p.hi, r.reference_over_p) << r.p;
    }
    EXPECT_THROW(figure1_table(1, 3, 0.1), RangeError);
    EXPECT_THROW(figure1_table(2, 3, 0), DomainError);
}
