#include "pwb/errors.hpp"
#include "pwb/sequence.hpp"

#include <gtest/gtest.h>

using namespace pwb;

TEST(ZeroSequence, TailContinuesArithmetically) {
    const ZeroSequence t({0.7, 1.5}, 0.8);
    EXPECT_EQ(t[0], 0.0);
    EXPECT_EQ(t[2], 1.5);
    EXPECT_NEAR(t[5], 1.5 + 3 * 0.8, 1e-15);
    EXPECT_EQ(t.tail_start(), 2u);
}

TEST(ZeroSequence, RejectsBadInput) {
    EXPECT_THROW(ZeroSequence({0.5, 0.5}, 1.0), DomainError);
    EXPECT_THROW(ZeroSequence({-0.1}, 1.0), DomainError);
    EXPECT_THROW(ZeroSequence({0.5}, 0.0), DomainError);
    EXPECT_THROW(ZeroSequence({0.5}, 1.5), DomainError);
}

TEST(ZeroSequence, StripeOf) {
    const ZeroSequence t({0.7, 1.5}, 1.0);
    EXPECT_EQ(t.stripe_of(0.3), 0u);
    EXPECT_EQ(t.stripe_of(1.0), 1u);
    EXPECT_EQ(t.stripe_of(2.0), 2u);
    EXPECT_EQ(t.stripe_of(10.2), 10u);
    EXPECT_FALSE(t.stripe_of(0.7));
    EXPECT_FALSE(t.stripe_of(3.5));
    EXPECT_FALSE(t.stripe_of(0.0));
}

TEST(ZeroSequence, ExtendedIsTheSameSequence) {
    const ZeroSequence t({0.7, 1.5}, 0.9);
    const ZeroSequence e = t.extended(6);
    EXPECT_EQ(e.tail_start(), 6u);
    for (std::size_t n = 0; n < 12; ++n) EXPECT_NEAR(e[n], t[n], 1e-14);
}

TEST(ZeroSequence, CommonSuffix) {
    const ZeroSequence a({0.7, 1.5, 2.5}, 1.0);
    const ZeroSequence b({0.6, 1.5, 2.5}, 1.0);
    EXPECT_EQ(common_suffix(a, b), 2u);
    EXPECT_FALSE(common_suffix(a, ZeroSequence({0.7, 1.5, 2.6}, 1.0)));
    EXPECT_EQ(common_suffix(a, a.extended(5)), 0u);
}

TEST(SequenceFile, RoundTrip) {
    const ZeroSequence t({0.7, 1.5, 2.25}, 0.75);
    const SequenceFile f = parse_sequence_json(to_json(t, 3.0, SeparationParams{0.6, 0.7}));
    EXPECT_EQ(f.tau, t);
    EXPECT_EQ(*f.p, 3.0);
    EXPECT_EQ(f.separation->delta1, 0.6);
    EXPECT_EQ(f.separation->delta2, 0.7);
}

TEST(SequenceFile, ParseErrors) {
    EXPECT_THROW(parse_sequence_json("{"), ParseError);
    EXPECT_THROW(parse_sequence_json("[1,2]"), ParseError);
    EXPECT_THROW(parse_sequence_json(R"({"p":3})"), ParseError);
    EXPECT_THROW(parse_sequence_json(R"({"explicit":[1,"x"]})"), ParseError);
    EXPECT_THROW(parse_sequence_json(R"({"explicit":[1,0.5]})"), ParseError);
    EXPECT_THROW(parse_sequence_json(R"({"explicit":[1,2],"tail_start":3})"), ParseError);
    EXPECT_THROW(parse_sequence_json(R"({"explicit":[1],"delta1":0.5})"), ParseError);
    const SequenceFile f = parse_sequence_json(R"({"explicit":[1,2]})");
    EXPECT_FALSE(f.p);
    EXPECT_EQ(f.tau.tail_step(), 1.0);
}
