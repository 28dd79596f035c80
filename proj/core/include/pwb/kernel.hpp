#pragma once

#include "pwb/numeric.hpp"
#include "pwb/sequence.hpp"

#include <vector>

namespace pwb {

struct Interval {
    double a = 0.0;
    double b = 0.0;

    double length() const noexcept { return b > a ? b - a : 0.0; }
    bool empty() const noexcept { return !(b > a); }
};

Interval intersect(const Interval& x, const Interval& y);

// (ξ, ξ + 2/p), a connected component of {sin((p/2)π(x − n)) > 0}
struct LevelInterval {
    double xi = 0.0;
    long level = 0;

    Interval span(const Exponent& p) const { return {xi, xi + p.hump()}; }
};

// A piece of a level interval after clipping to a window.
struct PositivePiece {
    Interval span;
    LevelInterval source;
};

inline constexpr double lattice_tol = 1e-9;

// Every level-n positivity interval meeting `window`, clipped to it and to x > 0, ascending.
std::vector<PositivePiece> positivity_intervals(long n, const Exponent& p, const Interval& window);

// Where sin(c·v) > 0 inside (lo, hi); no clipping at 0. Works for any p > 0.
std::vector<Interval> positive_phase(double lo, double hi, double p);

// ξ − n is a multiple of 4/p (to lattice_tol)
bool on_level(double xi, long n, const Exponent& p);

// The unique level-(n+1) interval meeting (ξ, ξ + 2/p): (ξ + 1 − 4/p, ξ + 1 − 2/p).
Interval level_neighbor(double xi, long n, const Exponent& p);

// ξ + 1/2 − 1/p, centre of the overlap with the neighbour
inline double midpoint(double xi, const Exponent& p) { return xi + 0.5 - 1.0 / p.value(); }

// K_p(τ; x) = sin((p/2)π(x − n))/(πx) on (τ_n, τ_{n+1}); zero at the τ_k themselves.
double kernel_value(const ZeroSequence& tau, const Exponent& p, double x);

}  // namespace pwb
