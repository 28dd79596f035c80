#include "pwb/objective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pwb {

namespace {

constexpr double eq_tol = lattice_tol;  // for the equalities in the reduced families

MembershipReport fail(std::size_t n, std::string clause) { return {Violation{n, std::move(clause)}}; }

MembershipReport check(const ZeroSequence& tau, const SeparationParams& d) {
    if (tau[1] < d.delta1 - feasibility_tol) return fail(1, "tau_1 >= delta1");
    const std::size_t N = tau.tail_start();
    for (std::size_t n = 1; n <= N; ++n)
        if (tau[n + 1] - tau[n] < d.delta2 - feasibility_tol) return fail(n, "tau_{n+1} - tau_n >= delta2");
    if (tau.tail_step() < d.delta2 - feasibility_tol) return fail(N + 1, "tail step >= delta2");
    return {};
}

// clauses (i)-(iii) at index n
bool first_family_clause(const ZeroSequence& tau, std::size_t n, const Exponent& p) {
    const double t0 = tau[n], t1 = tau[n + 1], t2 = tau[n + 2];
    const long level = static_cast<long>(n);
    if (t1 - t0 >= 2.0 / 3.0 - feasibility_tol) return true;
    // (ii) τ_{n+1} is the right end of a level-n interval
    double xi = t1 - p.hump();
    if (xi >= 1.0 - eq_tol && on_level(xi, level, p) && t0 < midpoint(xi - 1.0, p) + p.period() + feasibility_tol &&
        t2 >= midpoint(xi, p) + p.period() - feasibility_tol)
        return true;
    // (iii) τ_n sits right below a level-n interval starting one unit later
    xi = t0 + 1.0 - p.hump();
    return xi >= 1.0 - eq_tol && on_level(xi, level, p) && t1 >= midpoint(xi, p) - feasibility_tol;
}

MembershipReport check(const ZeroSequence& tau, const FirstReducedFamily& f) {
    const Exponent p(f.p);
    const std::size_t N = tau.tail_start();
    if (tau[1] < std::min(2.0 / pi, p.hump()) - feasibility_tol) return fail(1, "tau_1 >= min(2/pi, 2/p)");
    for (std::size_t n = 1; n <= std::max<std::size_t>(N, 1); ++n)
        if (tau[n] > static_cast<double>(n) + feasibility_tol) return fail(n, "tau_n <= n");
    if (tau.tail_step() < 2.0 / 3.0 - feasibility_tol) return fail(N + 1, "tail step below 2/3 satisfies none of (i)-(iii)");
    // (i)-(iii) are required for n ≥ 1; from N on the gap is the tail step and (i) holds
    for (std::size_t n = 1; n <= N; ++n)
        if (!first_family_clause(tau, n, p)) return fail(n, "none of (i), (ii), (iii)");
    return {};
}

MembershipReport check(const ZeroSequence& tau, const SecondReducedFamily& f) {
    if (auto r = check(tau, FirstReducedFamily{f.p}); !r) return r;
    const Exponent p(f.p);
    if (std::fabs(tau[1] - p.hump()) > eq_tol) return fail(1, "(I) tau_1 = 2/p");
    if (tau.tail_step() != 1.0) return fail(tau.tail_start() + 1, "tail step must be 1");

    // with a unit tail τ_n − n is constant from N on, so a short horizon past N sees every pattern
    const std::size_t N = tau.tail_start(), H = N + 8;
    auto excess = [&](std::size_t n) { return tau[n] - static_cast<double>(n); };
    auto sup_excess_from = [&](std::size_t m) {
        double e = excess(m);
        for (std::size_t n = m + 1; n <= std::max(m, N + 1); ++n) e = std::max(e, excess(n));
        return e;
    };

    // (II): the strongest j whose premise holds bounds the whole remainder
    for (std::size_t k = 0; k <= H; ++k) {
        const double mk = midpoint(static_cast<double>(k), p);
        const double j = std::floor((mk - tau[k + 1]) / p.period() + 1e-9);
        if (j < 0.0) continue;
        if (sup_excess_from(k + 2) > -1.0 - j * p.period() + p.hump() + feasibility_tol)
            return fail(k + 2, "(II) premise at k = " + std::to_string(k) + ", j = " + std::to_string(static_cast<long>(j)));
    }

    // (III)
    double lowest = INFINITY;
    for (std::size_t k = 0; k <= H; ++k) lowest = std::min(lowest, tau[k + 1] - static_cast<double>(k));
    const double ymax = second_family_ymax(f.p);
    for (long j = 0; p.hump() - static_cast<double>(j) * p.period() > lowest - feasibility_tol; ++j) {
        const double shift = static_cast<double>(j) * p.period();
        std::size_t k = 0;
        while (k <= H && !(tau[k + 1] < static_cast<double>(k) + p.hump() - shift - feasibility_tol)) ++k;
        if (k > H) continue;
        const double xi = static_cast<double>(k) - shift, m = midpoint(xi, p);
        const double t1 = tau[k + 1], t2 = tau[k + 2], t3 = tau[k + 3], t4 = tau[k + 4];
        const bool a = t1 >= m - feasibility_tol && t1 < xi + ymax + feasibility_tol &&
                       std::fabs(t2 - t1 - 2.0 / 3.0) <= eq_tol && t2 < m + 1.0 + feasibility_tol &&
                       std::fabs(t3 - (xi + 2.0 - p.hump())) <= eq_tol && t4 >= m + 2.0 - feasibility_tol;
        const bool b = f.p > 3.6 && std::fabs(t1 - (xi - 1.0 / 3.0 + p.hump())) <= eq_tol &&
                       std::fabs(t2 - (xi + 1.0 - p.hump())) <= eq_tol && t3 >= m + 1.0 - feasibility_tol;
        if (!a && !b) return fail(k + 1, "(III) neither (a) nor (b) for j = " + std::to_string(j));
    }
    return {};
}

}  // namespace

double second_family_ymax(double p) { return p <= 3.6 ? 5.0 / 6.0 - 1.0 / p : 2.0 / p; }

MembershipReport validate_membership(const ZeroSequence& tau, const Family& family) {
    return std::visit([&](const auto& f) { return check(tau, f); }, family);
}

}  // namespace pwb
