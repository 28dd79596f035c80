#include "pwb/objective.hpp"

#include <cmath>

namespace pwb {

namespace {

// Left end of I_{k,j} and its level.
struct RayGeometry {
    double origin;  // left end at j = 0
    double spacing; // ϱ
    long level0;    // level at j = 0
    long level_step;

    RayGeometry(RayIndex k, const Exponent& p) {
        const double kk = static_cast<double>(k.k);
        spacing = ray_spacing(k.regime, p);
        if (k.regime == Regime::Low) {
            origin = kk;
            level0 = k.k;
            level_step = 2;
        } else {
            origin = kk - 1.0 + p.period();
            level0 = k.k - 1;
            level_step = 1;
        }
    }
    double xi(long j) const { return origin + static_cast<double>(j) * spacing; }
    long level(long j) const { return level0 + level_step * j; }
};

void check_ray(RayIndex k, const Exponent& p) {
    if (k.k < 0) throw DomainError("ray index must be nonnegative");
    if (!p.supports(k.regime)) throw DomainError("ray geometry: p outside the " + to_string(k.regime) + " regime");
}

long first_j(RayIndex k) { return k.regime == Regime::High && k.k == 0 ? 1 : 0; }

}  // namespace

double ray_spacing(Regime regime, const Exponent& p) {
    return regime == Regime::Low ? 2.0 - p.period() : 1.0 - p.period();
}

std::vector<RayPiece> ray_intervals(RayIndex k, const Exponent& p, long j_max) {
    check_ray(k, p);
    const RayGeometry g(k, p);
    std::vector<RayPiece> out;
    for (long j = first_j(k); j <= j_max; ++j) out.push_back({j, {g.xi(j), g.level(j)}});
    return out;
}

std::vector<RayTerm> ray_terms(const ZeroSequence& tau, RayIndex k, const Exponent& p, const QuadSettings& s) {
    check_ray(k, p);
    const RayGeometry g(k, p);
    const double tail_speed = static_cast<double>(g.level_step) * tau.tail_step();
    std::vector<RayTerm> out;
    for (long j = first_j(k);; ++j) {
        const long lvl = g.level(j);
        const auto n = static_cast<std::size_t>(lvl);
        const double a = std::max({g.xi(j), tau[n], 0.0});
        const double b = std::min(g.xi(j) + p.hump(), tau[n + 1]);
        if (b > a) out.push_back({j, lvl, weighted_hump_estimate(a, b, static_cast<double>(lvl), p, s)});
        // once inside the tail, stripes run ahead of the ray for good
        if (n >= tau.tail_start() && tau[n] >= g.xi(j) + p.hump()) {
            if (tail_speed < g.spacing - 1e-15)
                throw DomainError("ray decomposition needs (level step)·(tail step) ≥ ray spacing");
            break;
        }
        if (j > 100000000) throw DomainError("ray never leaves the explicit part");
    }
    return out;
}

Bracket ray_contribution(const ZeroSequence& tau, RayIndex k, const Exponent& p, const QuadSettings& s) {
    Estimate total;
    for (const auto& t : ray_terms(tau, k, p, s)) total += t.value;
    return total.bracket();
}

Bracket ray_sum(const ZeroSequence& tau, Regime regime, const Exponent& p, const QuadSettings& s) {
    if (tau.tail_step() != 1.0) throw DomainError("ray_sum needs a unit tail step");
    const std::size_t N = tau.tail_start();
    const long K = static_cast<long>(N) + 2;
    CompensatedSum sum;
    double err = 0.0;
    for (long k = 0; k < K; ++k)
        for (const auto& t : ray_terms(tau, {k, regime}, p, s)) {
            sum += t.value.value;
            err += t.value.error;
        }
    Bracket total = Bracket::around(sum.value(), err);

    // Rays k ≥ K only meet tail stripes, where τ_n = n − d; relative to k the picture repeats.
    const double d = static_cast<double>(N) - tau[N];
    const RayGeometry g0({0, regime}, p);
    for (long j = 0;; ++j) {
        const double lo = g0.xi(j), hi = lo + p.hump();
        const double e = static_cast<double>(g0.level(j));
        const Interval v = intersect({lo, hi}, {e - d, e - d + 1.0});
        if (!v.empty()) {
            const LevelTerm term{static_cast<double>(K) + v.a, v.length(), 1.0, static_cast<double>(K) + e, 1.0,
                                 Shape::PositivePart};
            total += level_series(term, p, s);
        }
        if (hi <= e - d) break;  // the stripes have overtaken the ray for good
    }
    return total;
}

}  // namespace pwb
