#include "pwb/kernel.hpp"

#include "pwb/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pwb {

Interval intersect(const Interval& x, const Interval& y) { return {std::max(x.a, y.a), std::min(x.b, y.b)}; }

namespace {

// Components (origin + (4/p)k, origin + (4/p)k + 2/p) meeting (lo, hi), clipped.
template <class Emit>
void scan_lattice(double origin, double p, double lo, double hi, Emit&& emit) {
    const double period = 4.0 / p, hump = 2.0 / p;
    const long k_lo = static_cast<long>(std::floor((lo - origin - hump) / period)) - 1;
    const long k_hi = static_cast<long>(std::ceil((hi - origin) / period)) + 1;
    for (long k = k_lo; k <= k_hi; ++k) {
        const double xi = origin + static_cast<double>(k) * period;
        const double a = std::max(xi, lo), b = std::min(xi + hump, hi);
        if (b > a) emit(xi, Interval{a, b});
    }
}

}  // namespace

std::vector<PositivePiece> positivity_intervals(long n, const Exponent& p, const Interval& window) {
    if (!(window.a >= 0.0) || window.a > window.b) throw DomainError("positivity_intervals: window must satisfy 0 ≤ a ≤ b");
    std::vector<PositivePiece> out;
    scan_lattice(static_cast<double>(n), p.value(), std::max(window.a, 0.0), window.b,
                 [&](double xi, Interval piece) { out.push_back({piece, {xi, n}}); });
    return out;
}

std::vector<Interval> positive_phase(double lo, double hi, double p) {
    if (!(p > 0.0)) throw DomainError("positive_phase: p must be positive");
    std::vector<Interval> out;
    if (hi > lo) scan_lattice(0.0, p, lo, hi, [&](double, Interval piece) { out.push_back(piece); });
    return out;
}

bool on_level(double xi, long n, const Exponent& p) {
    const double k = std::round((xi - static_cast<double>(n)) / p.period());
    return std::fabs(static_cast<double>(n) + k * p.period() - xi) <= lattice_tol;
}

Interval level_neighbor(double xi, long n, const Exponent& p) {
    if (!on_level(xi, n, p)) throw DomainError("level_neighbor: xi is not the start of a level-n interval");
    return {xi + 1.0 - p.period(), xi + 1.0 - p.hump()};
}

double kernel_value(const ZeroSequence& tau, const Exponent& p, double x) {
    if (!(x > 0.0)) throw DomainError("kernel_value: x must be positive");
    const auto n = tau.stripe_of(x);
    if (!n) return 0.0;
    return std::sin(p.freq() * (x - static_cast<double>(*n))) / (pi * x);
}

}  // namespace pwb
