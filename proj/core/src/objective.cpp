#include "pwb/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pwb {

namespace {

Bracket enclose(const CompensatedSum& sum, double err) {
    const double v = sum.value();
    const double round = 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(v);
    return {v - err - round, v + err + round};
}

}  // namespace

Estimate level_integral(double a, double b, long n, const Exponent& p, const QuadSettings& s) {
    Estimate total;
    if (!(b > a)) return total;
    for (const auto& piece : positivity_intervals(n, p, {a, b}))
        total += weighted_hump_estimate(piece.span.a, piece.span.b, static_cast<double>(n), p, s);
    return total;
}

Estimate ep_level(const ZeroSequence& tau, std::size_t n, const Exponent& p, const QuadSettings& s) {
    return level_integral(tau[n], tau[n + 1], static_cast<long>(n), p, s);
}

Bracket ep(const ZeroSequence& tau, const Exponent& p, const QuadSettings& s) {
    s.validate();
    const std::size_t L = std::max<std::size_t>(static_cast<std::size_t>(s.tail_level_cutoff), tau.tail_start() + 1);
    CompensatedSum sum;
    double err = 0.0;
    for (std::size_t n = 0; n < L; ++n) {
        const Estimate e = ep_level(tau, n, p, s);
        sum += e.value;
        err += e.error;
    }
    // stripes from level L on: (τ_L + ks, τ_L + (k+1)s) at level L + k
    const double step = tau.tail_step();
    const LevelTerm tail{tau[L], step, step, static_cast<double>(L), 1.0, Shape::PositivePart};
    return enclose(sum, err) + series_tail(tail, 0, p.value(), s);
}

Estimate ep_truncated(const ZeroSequence& tau, const Exponent& p, double r, const QuadSettings& s) {
    if (std::isnan(r)) throw DomainError("ep_truncated: r is NaN");
    Estimate total;  // r ≤ 0 leaves nothing to integrate
    for (std::size_t n = 0; tau[n] < r; ++n)
        total += level_integral(tau[n], std::min(tau[n + 1], r), static_cast<long>(n), p, s);
    return total;
}

Bracket ep_difference(const ZeroSequence& from, const ZeroSequence& to, const Exponent& p, const QuadSettings& s) {
    const auto m = common_suffix(from, to);
    if (!m) return ep(to, p, s) - ep(from, p, s);
    CompensatedSum sum;
    double err = 0.0;
    for (std::size_t n = 0; n < *m; ++n) {
        if (from[n] == to[n] && from[n + 1] == to[n + 1]) continue;
        const Estimate a = ep_level(from, n, p, s), b = ep_level(to, n, p, s);
        sum += b.value;
        sum += -a.value;
        err += a.error + b.error;
    }
    return enclose(sum, err);
}

Estimate ep_truncated_difference(const ZeroSequence& from, const ZeroSequence& to, const Exponent& p, double r,
                                 const QuadSettings& s) {
    if (std::isnan(r)) throw DomainError("ep_truncated_difference: r is NaN");
    CompensatedSum sum;
    double err = 0.0;
    for (std::size_t n = 0; from[n] < r || to[n] < r; ++n) {
        const double fa = std::min(from[n], r), fb = std::min(from[n + 1], r);
        const double ta = std::min(to[n], r), tb = std::min(to[n + 1], r);
        if (fa == ta && fb == tb) continue;
        const Estimate a = level_integral(fa, fb, static_cast<long>(n), p, s);
        const Estimate b = level_integral(ta, tb, static_cast<long>(n), p, s);
        sum += b.value;
        sum += -a.value;
        err += a.error + b.error;
    }
    return {sum.value(), err};
}

Estimate s_local(double tau_next, double xi, long n, const Exponent& p, Regime regime, const QuadSettings& s) {
    if (!p.supports(regime)) throw DomainError("s_local: p outside the " + to_string(regime) + " regime");
    if (!on_level(xi, n, p)) throw DomainError("s_local: xi is not the start of a level-n interval");
    const Interval nb = level_neighbor(xi, n, p);
    const double lo = regime == Regime::Low ? nb.a : xi;
    const double hi = regime == Regime::Low ? xi + 1.0 : xi + p.period();
    if (tau_next < lo - feasibility_tol || tau_next > hi + feasibility_tol)
        throw DomainError("s_local: tau_{n+1} outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    if (xi < 0.0 || nb.a < 0.0) throw DomainError("s_local: intervals must lie in x > 0");
    Estimate total;
    const double own_end = std::min(tau_next, xi + p.hump());
    if (own_end > xi) total += weighted_hump_estimate(xi, own_end, static_cast<double>(n), p, s);
    const double nb_start = std::max(tau_next, nb.a);
    if (nb.b > nb_start) total += weighted_hump_estimate(nb_start, nb.b, static_cast<double>(n + 1), p, s);
    return total;
}

}  // namespace pwb
