#include "pwb/quadrature.hpp"

#include "pwb/kernel.hpp"

#include <cmath>

namespace pwb {

void QuadSettings::validate() const {
    if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
    if (rel_tol < 0.0) throw DomainError("rel_tol must be nonnegative");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
    if (tail_level_cutoff < 2) throw DomainError("tail_level_cutoff must be at least 2");
}

double hump_integrand(double x, double phase, double p) {
    const double c = 0.5 * p * pi;
    if (x == 0.0) {
        if (std::fabs(std::sin(c * phase)) <= 1e-12) return 0.25 * p * p;
        return INFINITY;
    }
    const double s = std::sin(c * (x - phase));
    return s * s / (pi * pi * x * x);
}

namespace {

// v0 shifted by a whole number of periods (2/p for sin², 4/p for its positive part)
double reduce_phase(double v0, double period) { return v0 - period * std::round(v0 / period); }

}  // namespace

Estimate hump_local(double v0, double x0, double len, double p, const QuadSettings& s) {
    if (len < 0.0) throw DomainError("hump integral over an interval of negative length");
    if (x0 < 0.0) throw DomainError("hump integral must stay on x ≥ 0");
    if (len == 0.0) return {};
    v0 = reduce_phase(v0, 2.0 / p);
    if (x0 == 0.0) {
        if (std::fabs(v0) > 1e-12) throw DomainError("integrand sin²/x² not integrable at 0 for this phase");
        v0 = 0.0;
    }
    const double c = 0.5 * p * pi;
    auto f = [=](double u) {
        const double x = x0 + u;
        const double sn = std::sin(c * (v0 + u));
        return sn * sn / (pi * pi * x * x);
    };
    return integrate(f, 0.0, len, s.abs_tol, s.rel_tol, s.max_subdivisions);
}

Estimate positive_hump_local(double v0, double x0, double len, double p, const QuadSettings& s) {
    Estimate total;
    for (const auto& piece : positive_phase(v0, v0 + len, p))
        total += hump_local(piece.a, x0 + (piece.a - v0), piece.b - piece.a, p, s);
    return total;
}

Estimate weighted_hump_estimate(double a, double b, double phase, const Exponent& p, const QuadSettings& s) {
    if (a > b) throw DomainError("weighted_hump: a > b");
    if (a < 0.0) throw DomainError("weighted_hump: a < 0");
    return hump_local(a - phase, a, b - a, p.value(), s);
}

double weighted_hump(double a, double b, long n, const Exponent& p, const QuadSettings& s) {
    return weighted_hump_estimate(a, b, static_cast<double>(n), p, s).value;
}

double hump_mass(double p) {
    if (!(p > 0.0)) throw DomainError("hump_mass: p must be positive");
    return 1.0 / p;
}

bool is_periodic(const LevelTerm& t, double p) {
    const double periods = (t.stride - t.phase_stride) * p / (t.shape == Shape::SinSquared ? 2.0 : 4.0);
    return std::fabs(periods - std::round(periods)) <= lattice_tol;
}

Estimate level_term(const LevelTerm& t, long k, double p, const QuadSettings& s) {
    const double kk = static_cast<double>(k);
    const double x0 = t.start + kk * t.stride;
    // a periodic descriptor shifts the phase by whole periods, so drop the shift exactly
    const double v0 = is_periodic(t, p) ? t.start - t.phase : t.start - t.phase + kk * (t.stride - t.phase_stride);
    return t.shape == Shape::SinSquared ? hump_local(v0, x0, t.length, p, s)
                                        : positive_hump_local(v0, x0, t.length, p, s);
}

Bracket series_tail(const LevelTerm& t, long first, double p, const QuadSettings& s) {
    if (!(t.stride > 0.0)) throw DomainError("divergent descriptor: stride must be positive");
    if (t.length < 0.0) throw DomainError("descriptor with negative length");
    if (t.length == 0.0) return {};
    const double sigma = t.stride;
    const double z0 = static_cast<double>(first) + t.start / sigma;

    if (!is_periodic(t, p)) {
        const double A = t.start + static_cast<double>(first) * sigma;
        if (!(A > 0.0)) throw DomainError("divergent descriptor: tail must start at x > 0");
        const double halves = std::ceil(t.length * p / 2.0) + 1.0;
        const double mass = std::min(t.length, halves / p);
        return {0.0, mass / (pi * pi) * (1.0 / (A * A) + 1.0 / (sigma * A))};
    }
    if (!(z0 > 0.5)) throw DomainError("divergent descriptor: tail must start well right of 0");

    // Σ_{k≥first} (start + kσ + u)^(-2) = σ^(-2) Σ_{m≥0} (m + z)^(-2), z = first + (start + u)/σ,
    // and for convex decreasing terms 1/z + 1/(2z²) ≤ Σ_{m≥0} (m + z)^(-2) ≤ 1/(z − 1/2).
    const double c = 0.5 * p * pi;
    const double scale = 1.0 / (pi * pi * sigma * sigma);
    const double v0 = reduce_phase(t.start - t.phase, t.shape == Shape::SinSquared ? 2.0 / p : 4.0 / p);
    std::vector<Interval> pieces;
    if (t.shape == Shape::SinSquared)
        pieces.push_back({v0, v0 + t.length});
    else
        pieces = positive_phase(v0, v0 + t.length, p);

    Estimate lo, hi;
    for (const auto& piece : pieces) {
        auto weight = [=](double v) {
            const double sn = std::sin(c * v);
            return sn * sn;
        };
        auto zof = [=](double v) { return z0 + (v - v0) / sigma; };
        lo += integrate([&](double v) { const double z = zof(v); return weight(v) * (1.0 / z + 0.5 / (z * z)); },
                        piece.a, piece.b, s.abs_tol, s.rel_tol, s.max_subdivisions);
        hi += integrate([&](double v) { return weight(v) / (zof(v) - 0.5); }, piece.a, piece.b, s.abs_tol, s.rel_tol,
                        s.max_subdivisions);
    }
    return {scale * (lo.value - lo.error), scale * (hi.value + hi.error)};
}

Bracket level_series(const LevelTerm& t, const Exponent& p, const QuadSettings& s) {
    s.validate();
    if (!(t.stride > 0.0)) throw DomainError("divergent descriptor: stride must be positive");
    if (t.length == 0.0) return {};
    const long K = s.tail_level_cutoff;
    CompensatedSum sum;
    double err = 0.0;
    for (long k = 0; k < K; ++k) {
        const Estimate e = level_term(t, k, p.value(), s);
        sum += e.value;
        err += e.error;
    }
    const Bracket tail = series_tail(t, K, p.value(), s);
    return {sum.value() - err + tail.lo, sum.value() + err + tail.hi};
}

}  // namespace pwb
