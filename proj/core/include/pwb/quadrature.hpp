#pragma once

#include "pwb/errors.hpp"
#include "pwb/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace pwb {

struct QuadSettings {
    double abs_tol = 1e-12;        // per finite interval
    double rel_tol = 0.0;          // optional, used by the appendix sweeps
    int max_subdivisions = 200;
    long tail_level_cutoff = 5000; // levels summed explicitly before the tail enclosure

    void validate() const;
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;

    Bracket bracket() const { return Bracket::around(value, error); }
    Estimate& operator+=(const Estimate& o) {
        value += o.value;
        error += o.error;
        return *this;
    }
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 tables).
inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
};

template <class F>
Segment gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = fc * kronrod_w[7];
    double g = fc * gauss_w[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kronrod_x[i];
        const double s = f(c - dx) + f(c + dx);
        k += kronrod_w[i] * s;
        if (i % 2 == 1) g += gauss_w[i / 2] * s;
    }
    return {a, b, k * h, std::fabs((k - g) * h)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod: bisect the worst segment until the summed
// |K15 − G7| estimate is below max(abs_tol, rel_tol·|I|).
template <class F>
Estimate integrate(F&& f, double a, double b, double abs_tol, double rel_tol, int max_subdivisions) {
    if (a > b) throw DomainError("integrate: lower limit above upper limit");
    if (a == b) return {};
    std::vector<detail::Segment> segs{detail::gk15(f, a, b)};
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int splits = 0;; ++splits) {
        CompensatedSum total;
        double err = 0.0;
        double mag = 0.0;
        for (const auto& s : segs) {
            total += s.value;
            err += s.error;
            mag += std::fabs(s.value);
        }
        const double target = std::max(abs_tol, rel_tol * std::fabs(total.value()));
        if (err <= target || err <= 50.0 * eps * mag) return {total.value(), err};
        auto worst = std::max_element(segs.begin(), segs.end(),
                                      [](const auto& x, const auto& y) { return x.error < y.error; });
        const double mid = 0.5 * (worst->a + worst->b);
        if (splits >= max_subdivisions || !(worst->a < mid && mid < worst->b))
            throw ConvergenceError("integrate: tolerance not reached", total.value(), err);
        const double lo = worst->a, hi = worst->b;
        *worst = detail::gk15(f, lo, mid);
        segs.push_back(detail::gk15(f, mid, hi));
    }
}

// sin²((p/2)π(x − phase))/(π²x²); at x = 0 (with a zero of the sine there) the limit p²/4.
double hump_integrand(double x, double phase, double p);

// ∫_0^len sin²(c(v0 + u))/(π²(x0 + u)²) du; the building block of every level integral.
Estimate hump_local(double v0, double x0, double len, double p, const QuadSettings& s);

// Same, restricted to where sin(c(v0 + u)) > 0.
Estimate positive_hump_local(double v0, double x0, double len, double p, const QuadSettings& s);

// ∫_a^b sin²((p/2)π(x − n))/(π²x²) dx
Estimate weighted_hump_estimate(double a, double b, double phase, const Exponent& p, const QuadSettings& s);
double weighted_hump(double a, double b, long n, const Exponent& p, const QuadSettings& s);

// ∫_0^{2/p} sin²((p/2)πu) du = 1/p
double hump_mass(double p);

enum class Shape { SinSquared, PositivePart };

// Term k: ∫ over (start + k·stride, start + k·stride + length) of
// shape((p/2)π(x − phase − k·phase_stride))/(π²x²) dx.
struct LevelTerm {
    double start = 0.0;
    double length = 0.0;
    double stride = 1.0;
    double phase = 0.0;
    double phase_stride = 1.0;
    Shape shape = Shape::PositivePart;
};

// True when the integrand shape repeats exactly from one term to the next.
bool is_periodic(const LevelTerm& t, double p);

Estimate level_term(const LevelTerm& t, long k, double p, const QuadSettings& s);

// Σ_{k ≥ first} of the terms, enclosed. Periodic terms use convexity bounds on
// Σ 1/(k + z)²; others fall back to mass/(π²x²) bounds.
Bracket series_tail(const LevelTerm& t, long first, double p, const QuadSettings& s);

// Σ_{k ≥ 0}: terms below the cutoff summed directly, the rest enclosed.
Bracket level_series(const LevelTerm& t, const Exponent& p, const QuadSettings& s);

}  // namespace pwb
