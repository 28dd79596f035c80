#pragma once

#include <cstdint>

namespace pwb {

// xoshiro256** seeded through splitmix64. Streams let sample i draw the same
// numbers no matter which thread runs it.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next();
    double uniform();                  // [0, 1)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    long integer(long lo, long hi);    // inclusive
    bool chance(double prob) { return uniform() < prob; }

private:
    std::uint64_t s_[4];
};

}  // namespace pwb
