#include "pwb/errors.hpp"
#include "pwb/kernel.hpp"
#include "pwb/objective.hpp"
#include "pwb/parallel.hpp"
#include "pwb/random.hpp"
#include "pwb/verify.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

namespace pwb {

namespace {

using nlohmann::json;

constexpr double tol = 1e-12;       // added to every slack
constexpr int max_attempts = 200;   // rejected draws per sample before giving up

enum class Claim { Strict, Weak, Equal };

std::string to_string(Claim c) {
    switch (c) {
    case Claim::Strict: return "strict";
    case Claim::Weak: return "weak";
    case Claim::Equal: return "equality";
    }
    return "";
}

// raw margin with the combined width of the brackets it was computed from
struct Diff {
    double raw = 0.0;
    double width = 0.0;
};

Diff of(const Bracket& b) { return {b.mid(), b.width()}; }
Diff of(const Estimate& e) { return {e.value, 2.0 * e.error}; }
Diff operator-(const Diff& a, const Diff& b) { return {a.raw - b.raw, a.width + b.width}; }
Diff operator+(const Diff& a, const Diff& b) { return {a.raw + b.raw, a.width + b.width}; }

struct Outcome {
    Claim claim = Claim::Weak;
    Diff margin;
    json witness;

    double adjusted() const {
        const double slack = 2.0 * (margin.width + tol);
        switch (claim) {
        case Claim::Strict: return margin.raw - slack;
        case Claim::Weak: return margin.raw + slack;
        case Claim::Equal: return slack - std::fabs(margin.raw);
        }
        return 0.0;
    }
    bool holds() const { return claim == Claim::Strict ? adjusted() > 0.0 : adjusted() >= 0.0; }
};

Outcome outcome(Claim c, Diff d, json w) {
    w["claim"] = to_string(c);
    w["raw"] = d.raw;
    w["width"] = d.width;
    return {c, d, std::move(w)};
}

// A sample whose structural claim failed (membership, geometry).
Outcome broken(json w, const std::string& why) {
    w["failure"] = why;
    return outcome(Claim::Weak, {-1.0, 0.0}, std::move(w));
}

using Sampler = std::function<std::optional<Outcome>(Rng&)>;

struct Check {
    std::string id;
    std::string claim;
    std::size_t samples;
    Sampler sample;
};

// ---------------------------------------------------------------- draws

// Uniform on [a, b], with 15% of the draws pinned to each end: boundaries are where claims get tight.
double edgy(Rng& r, double a, double b) {
    const double u = r.uniform();
    if (u < 0.15) return a;
    if (u < 0.30) return b;
    return r.uniform(a, b);
}

// Level-n interval start ξ = n + (4/p)k drawn with ξ ∈ [lo, hi].
std::optional<double> lattice_point(Rng& r, long n, const Exponent& p, double lo, double hi) {
    const double per = p.period();
    const long k0 = static_cast<long>(std::ceil((lo - static_cast<double>(n)) / per - 1e-12));
    const long k1 = static_cast<long>(std::floor((hi - static_cast<double>(n)) / per + 1e-12));
    if (k0 > k1) return std::nullopt;
    return static_cast<double>(n) + per * static_cast<double>(r.integer(k0, k1));
}

json terms_json(const ZeroSequence& s) {
    return json{{"explicit", s.explicit_terms()}, {"tail_step", s.tail_step()}};
}

// τ₁ ∈ [d1, 1 + c], τ_n ∈ [τ_{n−1} + d2, n + c]: a member of T(d1, d2) below the line n + c.
std::vector<double> capped_terms(Rng& r, std::size_t count, double d1, double d2, double c) {
    std::vector<double> t;
    double prev = 0.0;
    for (std::size_t n = 1; n <= count; ++n) {
        const double lo = n == 1 ? d1 : prev + d2;
        const double hi = static_cast<double>(n) + c;
        prev = edgy(r, lo, std::max(lo, hi));
        t.push_back(prev);
    }
    return t;
}

// Unconstrained member of T(d1, d2): gaps in [d2, d2 + spread].
std::vector<double> free_terms(Rng& r, std::size_t count, double d1, double d2, double spread) {
    std::vector<double> t;
    double prev = 0.0;
    for (std::size_t n = 1; n <= count; ++n) {
        prev = n == 1 ? edgy(r, d1, d1 + spread) : prev + edgy(r, d2, d2 + spread);
        t.push_back(prev);
    }
    return t;
}

double tail_step_for(Rng& r, double d2) { return r.chance(0.5) ? 1.0 : r.uniform(d2, 1.0); }

std::optional<std::string> violation(const ZeroSequence& s, const Family& f) {
    const auto rep = validate_membership(s, f);
    if (rep.ok()) return std::nullopt;
    return "index " + std::to_string(rep.violation->index) + ": " + rep.violation->clause;
}

// γ_n = min(τ_n, n + c). The tail is made explicit until it settles on one side of the line.
std::optional<ZeroSequence> clip_below_line(const ZeroSequence& tau, double c) {
    const std::size_t N = tau.tail_start();
    const double s = tau.tail_step();
    const double gap = tau[N] - (static_cast<double>(N) + c);  // positive: tail starts above the line
    std::size_t M = N;
    if (gap > 0.0 && s < 1.0)
        M = N + static_cast<std::size_t>(std::ceil(gap / (1.0 - s)));
    else if (gap <= 0.0 && s > 1.0)
        M = N + static_cast<std::size_t>(std::ceil(-gap / (s - 1.0))) + 1;
    if (M > N + 400) return std::nullopt;
    const ZeroSequence ext = tau.extended(std::max<std::size_t>(M, 1));
    std::vector<double> g;
    for (std::size_t n = 1; n <= ext.tail_start(); ++n) g.push_back(std::min(ext[n], static_cast<double>(n) + c));
    const std::size_t last = ext.tail_start();
    const bool below = ext[last] <= static_cast<double>(last) + c;
    // below the line the tail is τ's own; above it (unit or faster steps) the line wins for good
    const double step = below && s <= 1.0 ? s : 1.0;
    return ZeroSequence(std::move(g), step);
}

// ---------------------------------------------------------------- reduced families

double min_first(double p) { return std::min(2.0 / pi, 2.0 / p); }
double ymax(double p) { return second_family_ymax(p); }

// Start with a level-k lattice point ξ = k − (4/p)j, τ_k given; fills τ_1..τ_{k−1} backwards with
// gaps ≥ 2/3, τ_n ≤ n, τ₁ ≥ min(2/π, 2/p) and (when `first_crossing`) τ_m ≥ m − 1 + 2/p − 4j/p for
// 2 ≤ m ≤ k, so that k is the first index whose successor drops below the level-j track.
std::optional<std::vector<double>> prefix_backwards(Rng& r, double p, std::size_t k, double tau_k, long j,
                                                    bool first_crossing) {
    std::vector<double> t(k + 1, 0.0);
    t[k] = tau_k;
    for (std::size_t m = k - 1; m >= 1; --m) {
        const double dm = static_cast<double>(m);
        double lo = min_first(p) + (dm - 1.0) * 2.0 / 3.0;
        if (first_crossing && m >= 2) lo = std::max(lo, dm - 1.0 + 2.0 / p - 4.0 * static_cast<double>(j) / p);
        const double hi = std::min(t[m + 1] - 2.0 / 3.0, dm);
        if (lo > hi + 1e-15) return std::nullopt;
        t[m] = edgy(r, lo, std::max(lo, hi));
    }
    return std::vector<double>(t.begin() + 1, t.end());
}

// Continue with gaps in [2/3, 1] below n, then a unit tail.
void continue_terms(Rng& r, std::vector<double>& t, std::size_t extra) {
    for (std::size_t i = 0; i < extra; ++i) {
        const double n = static_cast<double>(t.size() + 1);
        const double lo = t.back() + 2.0 / 3.0;
        t.push_back(std::min(edgy(r, lo, lo + 1.0 / 3.0), std::max(lo, n)));
    }
}

struct Block {
    std::size_t k;
    double xi;
    bool type_a;
    double y;
};

struct SecondFamilyDraw {
    std::vector<double> terms;
    std::vector<Block> blocks;
};

// A member of T₂: the λ track n − 1 + 2/p − 4j/p, dropping one track (j → j + 1) at each block.
// Block (a) at k: τ_{k+1} = ξ + y, τ_{k+2} = τ_{k+1} + 2/3, τ_{k+3} = ξ + 2 − 2/p.
// Block (b) at k (p > 3.6): τ_{k+1} = ξ − 1/3 + 2/p, τ_{k+2} = ξ + 1 − 2/p.
// A forced block is placed exactly at `forced.k`; other blocks keep clear of it.
std::optional<SecondFamilyDraw> second_family(Rng& r, double p, std::size_t horizon, double block_rate,
                                              std::optional<Block> forced = std::nullopt) {
    SecondFamilyDraw d;
    d.terms.push_back(2.0 / p);
    long j = 0;
    std::size_t n = 1, free_from = 1;
    while (d.terms.size() < horizon) {
        const double xi = static_cast<double>(n) - 4.0 * static_cast<double>(j) / p;
        std::optional<Block> b;
        if (forced && n == forced->k) {
            b = Block{n, xi, forced->type_a, forced->y};
        } else if (n >= free_from && xi >= 1.0 && n + 5 <= horizon && r.chance(block_rate) &&
                   (!forced || n + 5 < forced->k || n > forced->k)) {
            // a (b)-block needs its follow-up interval ξ + 1 − 4/p ≥ 1 to stay in T₁
            const bool a = !(p > 3.6 && xi >= 4.0 / p && r.chance(0.5));
            b = Block{n, xi, a, a ? edgy(r, 0.5 - 1.0 / p, ymax(p) - 1e-9) : 0.0};
        }
        if (b) {
            if (xi < 1.0 || (!b->type_a && xi < 4.0 / p)) return std::nullopt;
            b->xi = xi;
            if (b->type_a) {
                d.terms.push_back(xi + b->y);
                d.terms.push_back(xi + b->y + 2.0 / 3.0);
                d.terms.push_back(xi + 2.0 - 2.0 / p);
                n += 3;
            } else {
                d.terms.push_back(xi - 1.0 / 3.0 + 2.0 / p);
                d.terms.push_back(xi + 1.0 - 2.0 / p);
                n += 2;
            }
            ++j;
            free_from = n + 1;  // one track step before the next block
            d.blocks.push_back(*b);
            continue;
        }
        d.terms.push_back(static_cast<double>(n) + 2.0 / p - 4.0 * static_cast<double>(j) / p);
        ++n;
    }
    if (forced && (d.blocks.empty() || std::none_of(d.blocks.begin(), d.blocks.end(),
                                                    [&](const Block& b) { return b.k == forced->k; })))
        return std::nullopt;
    return d;
}

json blocks_json(const std::vector<Block>& bs) {
    json a = json::array();
    for (const auto& b : bs) a.push_back({{"k", b.k}, {"xi", b.xi}, {"type", b.type_a ? "a" : "b"}, {"y", b.y}});
    return a;
}

// γ₁ = 2/p, γ_n = τ_{n−1} + 1: the whole sequence shifted one step to the right.
ZeroSequence shift_right(const ZeroSequence& tau, double p) {
    std::vector<double> g{2.0 / p};
    for (double v : tau.explicit_terms()) g.push_back(v + 1.0);
    return ZeroSequence(std::move(g), tau.tail_step());
}

// γ_n = τ_n for n ≤ k, τ_{n−1} + 1 after.
ZeroSequence shift_after(const ZeroSequence& tau, std::size_t k) {
    std::vector<double> g;
    for (std::size_t n = 1; n <= k; ++n) g.push_back(tau[n]);
    for (std::size_t n = k + 1; n <= tau.tail_start() + 1; ++n) g.push_back(tau[n - 1] + 1.0);
    return ZeroSequence(std::move(g), tau.tail_step());
}

ZeroSequence with_term(const ZeroSequence& tau, std::size_t n, double v) {
    std::vector<double> t = tau.extended(std::max(tau.tail_start(), n)).explicit_terms();
    t[n - 1] = v;
    return ZeroSequence(std::move(t), tau.tail_step());
}

// ---------------------------------------------------------------- local objective checks

std::optional<Outcome> neighbor_geometry(Rng& r) {
    const double u = r.uniform();
    const double pv = u < 0.05 ? 2.0 : u < 0.10 ? 6.0 : r.uniform(2.0, 6.0);
    const Exponent p(pv);
    const long n = r.integer(0, 30);
    const auto xi = lattice_point(r, n, p, 0.0, static_cast<double>(n) + 3.0);
    if (!xi) return std::nullopt;
    std::vector<PositivePiece> pieces;
    for (const auto& pc : positivity_intervals(n + 1, p, {*xi, *xi + p.hump()}))
        if (pc.span.length() > 1e-12) pieces.push_back(pc);
    json w{{"p", pv}, {"n", n}, {"xi", *xi}, {"pieces", pieces.size()}};
    if (pv == 2.0 || pv == 6.0)
        return outcome(Claim::Equal, {pieces.empty() ? 0.0 : 1.0, 0.0}, w);
    const Interval nb = level_neighbor(*xi, n, p);
    const bool ok = pieces.size() == 1 && std::fabs(pieces[0].source.xi - (*xi + 1.0 - p.period())) <= lattice_tol &&
                    std::fabs(nb.a - (*xi + 1.0 - p.period())) <= lattice_tol &&
                    std::fabs(nb.b - (*xi + 1.0 - p.hump())) <= lattice_tol;
    w["overlap"] = ok ? pieces[0].span.length() : 0.0;
    return outcome(Claim::Equal, {ok ? 0.0 : 1.0, 0.0}, w);
}

struct LocalSetup {
    Exponent p;
    long n;
    double xi;
    Interval nb;
};

std::optional<LocalSetup> local_setup(Rng& r, double p_lo, double p_hi) {
    const Exponent p(r.uniform(p_lo, p_hi));
    const long n = r.integer(0, 20);
    const auto xi = lattice_point(r, n, p, 0.0, static_cast<double>(n) + 2.0);
    if (!xi) return std::nullopt;
    const Interval nb = level_neighbor(*xi, n, p);
    if (nb.a < 0.0) return std::nullopt;
    return LocalSetup{p, n, *xi, nb};
}

Diff s_at(const LocalSetup& s, double t, Regime regime) { return of(s_local(t, s.xi, s.n, s.p, regime)); }

std::optional<Outcome> exchange_max_left(Rng& r) {
    const auto s = local_setup(r, 2.0, 4.0);
    if (!s) return std::nullopt;
    const double t = edgy(r, s->nb.a, s->xi + 1.0);
    const Diff d = s_at(*s, s->nb.a, Regime::Low) - s_at(*s, t, Regime::Low);
    return outcome(Claim::Weak, d, {{"p", s->p.value()}, {"n", s->n}, {"xi", s->xi}, {"t", t}});
}

std::optional<Outcome> exchange_valley(Rng& r) {
    const auto s = local_setup(r, 2.0, 4.0);
    if (!s) return std::nullopt;
    const double m = midpoint(s->xi, s->p);
    const double right = s->xi + s->p.hump();
    const long region = r.integer(0, 2);
    const double a = region == 0 ? s->nb.a : region == 1 ? m : right;
    const double b = region == 0 ? m : region == 1 ? right : s->xi + 1.0;
    if (!(b > a + 1e-9)) return std::nullopt;
    double t1 = edgy(r, a, b), t2 = edgy(r, a, b);
    if (t1 > t2) std::swap(t1, t2);
    const Diff s1 = s_at(*s, t1, Regime::Low), s2 = s_at(*s, t2, Regime::Low);
    json w{{"p", s->p.value()}, {"n", s->n}, {"xi", s->xi}, {"t1", t1}, {"t2", t2},
           {"region", region == 0 ? "decreasing" : region == 1 ? "increasing" : "constant"}};
    if (region == 0) return outcome(Claim::Weak, s1 - s2, w);
    if (region == 1) return outcome(Claim::Weak, s2 - s1, w);
    return outcome(Claim::Equal, s2 - s1, w);
}

std::optional<Outcome> exchange_max_mid(Rng& r) {
    const auto s = local_setup(r, 4.0, 6.0);
    if (!s) return std::nullopt;
    const double t = edgy(r, s->xi, s->xi + s->p.period());
    const Diff d = s_at(*s, midpoint(s->xi, s->p), Regime::High) - s_at(*s, t, Regime::High);
    return outcome(Claim::Weak, d, {{"p", s->p.value()}, {"n", s->n}, {"xi", s->xi}, {"t", t}});
}

// ---------------------------------------------------------------- clipping

// E(γ) ≥ E(τ) and γ ∈ T(δ) for γ_n = min(τ_n, n + c).
std::optional<Outcome> clip_check(Rng& r, bool high) {
    const Exponent p(high ? r.uniform(4.0, 6.0) : r.uniform(2.0, 4.0));
    const double c = high ? -0.5 + 3.0 / p.value() : 0.0;
    const SeparationParams d{r.uniform(0.2, std::min(1.0, 1.0 + c)), r.uniform(0.2, 1.0)};
    const std::size_t N = static_cast<std::size_t>(r.integer(2, 8));
    const bool below = r.chance(0.1);
    auto terms = below ? capped_terms(r, N, d.delta1, d.delta2, c) : free_terms(r, N, d.delta1, d.delta2, 1.2);
    const ZeroSequence tau(std::move(terms), tail_step_for(r, d.delta2));
    const auto gamma = clip_below_line(tau, c);
    if (!gamma) return std::nullopt;
    json w{{"p", p.value()}, {"delta1", d.delta1}, {"delta2", d.delta2}, {"tau", terms_json(tau)}};
    if (const auto v = violation(*gamma, d)) return broken(w, "clipped sequence leaves T(delta): " + *v);
    return outcome(Claim::Weak, of(ep_difference(tau, *gamma, p)), w);
}

std::optional<Outcome> clip_to_integers(Rng& r) { return clip_check(r, false); }
std::optional<Outcome> clip_high(Rng& r) { return clip_check(r, true); }

// γ₁ = 2/p, γ_{n+1} = min(τ_{n+1}, ξ + 2/p) for the level-n interval ξ picked by τ_n: γ ∈ T₁, E(τ) ≤ E(γ).
std::optional<Outcome> clip_to_right_endpoints(Rng& r) {
    const double pv = r.uniform(3.0 + 1e-6, 4.0 - 1e-6);
    const Exponent p(pv);
    std::vector<double> terms;
    if (r.chance(0.5)) {
        const auto d = second_family(r, pv, static_cast<std::size_t>(r.integer(4, 12)), 0.35);
        if (!d) return std::nullopt;
        terms = d->terms;
        // wiggle one term off the family while keeping the gap rule
        if (r.chance(0.5)) {
            const std::size_t i = static_cast<std::size_t>(r.integer(0, static_cast<long>(terms.size()) - 1));
            const double lo = i == 0 ? min_first(pv) : terms[i - 1] + 2.0 / 3.0;
            const double hi = std::min(i + 1 < terms.size() ? terms[i + 1] - 2.0 / 3.0 : 1e9,
                                       static_cast<double>(i + 1));
            if (lo <= hi) terms[i] = edgy(r, lo, hi);
        }
    } else {
        terms = capped_terms(r, static_cast<std::size_t>(r.integer(2, 10)), min_first(pv), 2.0 / 3.0, 0.0);
    }
    const ZeroSequence tau(terms, 1.0);
    if (violation(tau, FirstReducedFamily{pv})) return std::nullopt;

    const std::size_t M = tau.tail_start() + 3;
    std::vector<double> g{2.0 / pv};
    for (std::size_t n = 1; n < M; ++n) {
        // ξ ≡ n mod 4/p with m_{ξ−1} ≤ τ_n < m_{ξ−1} + 4/p, i.e. the last lattice point at or below τ_n + 1/2 + 1/p
        // ties at m_{ξ−1} go to the upper interval (see notes on the boundary convention)
        const double top = tau[n] + 0.5 + 1.0 / pv;
        const double steps = std::floor((top - static_cast<double>(n)) / p.period() + 1e-9);
        const double xi = static_cast<double>(n) + steps * p.period();
        g.push_back(std::min(tau[n + 1], xi + p.hump()));
    }
    const ZeroSequence gamma(std::move(g), 1.0);
    json w{{"p", pv}, {"tau", terms_json(tau)}, {"gamma", terms_json(gamma)}};
    if (const auto v = violation(gamma, FirstReducedFamily{pv})) return broken(w, "gamma leaves T1: " + *v);
    return outcome(Claim::Weak, of(ep_difference(tau, gamma, p)), w);
}

// ---------------------------------------------------------------- rays

std::optional<Outcome> ray_sum_check(Rng& r, Regime regime) {
    const bool low = regime == Regime::Low;
    const Exponent p(low ? r.uniform(2.0, 4.0) : r.uniform(4.0, 6.0));
    const double pv = p.value();
    const double floor = low ? 1.0 - 2.0 / pv : 1.0 - 4.0 / pv;
    const double d1_max = low ? 1.0 : 0.5 + 3.0 / pv;
    const SeparationParams d{r.uniform(std::max(floor, 1e-3), d1_max), r.uniform(std::max(floor, 1e-3), 1.0)};
    const double c = low ? 0.0 : -0.5 + 3.0 / pv;
    const ZeroSequence tau(capped_terms(r, static_cast<std::size_t>(r.integer(1, 8)), d.delta1, d.delta2, c), 1.0);
    const Diff diff = of(ray_sum(tau, regime, p)) - of(ep(tau, p));
    return outcome(Claim::Equal, diff, {{"p", pv}, {"delta1", d.delta1}, {"delta2", d.delta2}, {"tau", terms_json(tau)}});
}

std::optional<Outcome> ray_sum_low(Rng& r) { return ray_sum_check(r, Regime::Low); }
std::optional<Outcome> ray_sum_high(Rng& r) { return ray_sum_check(r, Regime::High); }

std::optional<Outcome> ray_bound_low(Rng& r) {
    const double pv = r.chance(0.1) ? 4.0 : r.uniform(2.0, 4.0);
    const Exponent p(pv);
    const SeparationParams d{r.uniform(1.0 - 2.0 / pv, 1.0), r.uniform(std::max(2.0 - 4.0 / pv, 1e-3), 1.0)};
    const std::size_t N = static_cast<std::size_t>(r.integer(1, 8));
    const ZeroSequence tau(capped_terms(r, N, d.delta1, d.delta2, 0.0), r.chance(0.7) ? 1.0 : r.uniform(d.delta2, 1.0));
    const long k = r.integer(0, static_cast<long>(N) + 1);
    const double kk = static_cast<double>(k);
    const Diff bound = of(weighted_hump_estimate(kk, kk + p.hump(), kk, p, {}));
    const Diff a = of(ray_contribution(tau, {k, Regime::Low}, p));
    const double next = tau[static_cast<std::size_t>(k) + 1];
    const Claim c = (pv == 4.0 || next >= kk + p.hump()) ? Claim::Equal
                    : (pv <= 3.8 && next <= kk + p.hump() - 0.02) ? Claim::Strict
                                                                   : Claim::Weak;
    return outcome(c, bound - a,
                   {{"p", pv}, {"delta1", d.delta1}, {"delta2", d.delta2}, {"k", k}, {"tau", terms_json(tau)}});
}

std::optional<Outcome> ray_bound_high(Rng& r) {
    const double pv = r.uniform(4.0, 6.0);
    const Exponent p(pv);
    const SeparationParams d{r.uniform(1.0 - 2.0 / pv, 0.5 + 3.0 / pv), r.uniform(1.0 - 2.0 / pv, 1.0)};
    const std::size_t N = static_cast<std::size_t>(r.integer(2, 8));
    const ZeroSequence tau(free_terms(r, N, d.delta1, d.delta2, 1.0), r.chance(0.7) ? 1.0 : r.uniform(d.delta2, 1.0));
    const long k = r.integer(1, static_cast<long>(N) + 1);
    const double kk = static_cast<double>(k);
    // first hump of the ray up to its midpoint at level k − 1, then the level-k hump from there
    const Diff bound = of(weighted_hump_estimate(kk - 1.0 + 4.0 / pv, kk - 0.5 + 3.0 / pv, kk - 1.0, p, {})) +
                       of(weighted_hump_estimate(kk - 0.5 + 3.0 / pv, kk + 2.0 / pv, kk, p, {}));
    const auto terms = ray_terms(tau, {k, Regime::High}, p);
    Estimate a;
    std::vector<long> js;
    for (const auto& t : terms) {
        a += t.value;
        if (t.value.value > 1e-13) js.push_back(t.j);
    }
    json w{{"p", pv}, {"delta1", d.delta1}, {"delta2", d.delta2}, {"k", k}, {"tau", terms_json(tau)},
           {"nonzero_terms", js}};
    const bool consecutive = js.empty() || js.back() - js.front() + 1 == static_cast<long>(js.size());
    if (js.size() > 3 || !consecutive) return broken(w, "more than three or non-consecutive ray terms");
    return outcome(Claim::Weak, bound - of(a), w);
}

Diff first_two_rays(const ZeroSequence& s, const Exponent& p) {
    return of(ray_contribution(s, {0, Regime::High}, p)) + of(ray_contribution(s, {1, Regime::High}, p));
}

// τ₁ = 1/2 against γ₁ = 1/2 + 3/p, both in T(1/2, 1 − 2/p).
std::optional<Outcome> first_rays_sample(Rng& r, double pv, Claim claim, bool canonical) {
    const Exponent p(pv);
    const double d2 = 1.0 - 2.0 / pv;
    const auto build = [&](double first, std::optional<double> second, double second_min) {
        std::vector<double> t{first};
        t.push_back(second ? *second : edgy(r, first + second_min, first + 2.0));
        for (int i = 0; i < 3; ++i) t.push_back(t.back() + edgy(r, d2, 1.5));
        return ZeroSequence(std::move(t), 1.0);
    };
    const double g1 = 0.5 + 3.0 / pv;
    const ZeroSequence tau = build(0.5, canonical ? std::optional(1.5 - 1.0 / pv) : std::nullopt, d2);
    const ZeroSequence gamma = canonical ? build(g1, std::nullopt, std::max(d2, 1.0 + 2.0 / pv - g1))
                                         : build(g1, std::nullopt, d2);
    const Diff diff = first_two_rays(gamma, p) - first_two_rays(tau, p);
    return outcome(claim, diff, {{"p", pv}, {"tau", terms_json(tau)}, {"gamma", terms_json(gamma)}});
}

std::optional<Outcome> first_rays_high(Rng& r) {
    const double pv = r.uniform(4.0 + 1e-9, 5.0);
    return first_rays_sample(r, pv, pv >= 4.05 ? Claim::Strict : Claim::Weak, false);
}

std::optional<Outcome> first_rays_high_at_4(Rng& r) { return first_rays_sample(r, 4.0, Claim::Equal, true); }

std::optional<Outcome> pull_left_high(Rng& r) {
    const double pv = r.uniform(4.0 + 1e-9, 6.0);
    const Exponent p(pv);
    const long n = r.integer(1, 5);
    std::vector<double> t{r.uniform(0.3, 1.2)};
    for (long i = 1; i < n; ++i) t.push_back(t.back() + r.uniform(0.4, 1.1));
    // smallest (or next) level-n lattice point at or above τ_n
    const double steps = std::ceil((t.back() - static_cast<double>(n)) / p.period() - 1e-12) + (r.chance(0.3) ? 1 : 0);
    const double xi = static_cast<double>(n) + steps * p.period();
    const double m = midpoint(xi, p);
    t.push_back(m + p.period());
    t.push_back(edgy(r, xi + 1.0 + p.hump(), xi + 1.6 + p.hump()));
    for (int i = 0; i < 3; ++i) t.push_back(t.back() + r.uniform(0.5, 1.0));
    const ZeroSequence tau(t, 1.0);
    const ZeroSequence gamma = with_term(tau, static_cast<std::size_t>(n) + 1, m);
    const Claim c = pv >= 4.05 ? Claim::Strict : Claim::Weak;
    return outcome(c, of(ep_difference(tau, gamma, p)), {{"p", pv}, {"n", n}, {"xi", xi}, {"tau", terms_json(tau)}});
}

// ---------------------------------------------------------------- the first reduced family

std::optional<Outcome> snap_to_right_endpoint(Rng& r) {
    // near 3.6 the admissible y-range collapses and the gain drops below quadrature resolution
    const double pv = r.uniform(3.0 + 1e-6, 3.58);
    const Exponent p(pv);
    const std::size_t k = static_cast<std::size_t>(r.integer(1, 8));
    const long j = r.integer(0, 1);
    const double xi = static_cast<double>(k) - 4.0 * static_cast<double>(j) / pv;
    if (xi < 1.0) return std::nullopt;
    const double ylo = 5.0 / 6.0 - 1.0 / pv;
    const double yhi = 2.0 / pv - std::min(0.01, (3.0 / pv - 5.0 / 6.0) / 3.0);
    const double y = edgy(r, ylo, yhi);
    const double next = xi + y;
    const double tk_hi = std::min(static_cast<double>(k), next - 2.0 / 3.0);
    const double tk = r.chance(0.3) ? xi - 1.0 + 2.0 / pv : r.uniform(min_first(pv) + (static_cast<double>(k) - 1) * 2.0 / 3.0, tk_hi);
    if (tk > tk_hi + 1e-15) return std::nullopt;
    auto pre = prefix_backwards(r, pv, k, tk, j, false);
    if (!pre) return std::nullopt;
    std::vector<double> t = *pre;
    t.push_back(next);
    const double lo2 = std::max(next + 2.0 / 3.0, static_cast<double>(k) + 1.5 - 1.0 / pv);
    if (lo2 > static_cast<double>(k) + 2.0) return std::nullopt;
    t.push_back(edgy(r, lo2, static_cast<double>(k) + 2.0));
    const ZeroSequence tau(t, 1.0);
    if (violation(tau, FirstReducedFamily{pv})) return std::nullopt;
    const ZeroSequence gamma = with_term(tau, k + 1, xi + p.hump());
    json w{{"p", pv}, {"k", k}, {"xi", xi}, {"y", y}, {"tau", terms_json(tau)}};
    if (const auto v = violation(gamma, FirstReducedFamily{pv})) return broken(w, "gamma leaves T1: " + *v);
    return outcome(Claim::Strict, of(ep_difference(tau, gamma, p)), w);
}

std::optional<Outcome> tighten_below_midpoint(Rng& r) {
    const double pv = r.uniform(3.6 + 1e-6, 4.0 - 1e-6);
    const Exponent p(pv);
    const long j = r.integer(1, 2);
    const double shift = 4.0 * static_cast<double>(j) / pv;
    // smallest k for which the crossing window below is nonempty, plus a random offset
    std::size_t k = 1;
    const auto window = [&](std::size_t kk) {
        const double dk = static_cast<double>(kk);
        const double lo = std::max(dk - 1.0 - shift + 2.0 / pv, min_first(pv) + (dk - 1.0) * 2.0 / 3.0);
        const double hi = std::min(dk + 0.5 - 1.0 / pv - shift - 2.0 / 3.0 - 0.01, dk);
        return std::pair{lo, hi};
    };
    while (k < 40 && window(k).first > window(k).second) ++k;
    k += static_cast<std::size_t>(r.integer(0, 3));
    const auto [lo, hi] = window(k);
    if (lo > hi) return std::nullopt;
    const double tk = edgy(r, lo, hi);
    const double mk = static_cast<double>(k) + 0.5 - 1.0 / pv - shift;
    const double a = tk + 2.0 / 3.0 + 0.005, b = mk - 0.005;
    if (a > b) return std::nullopt;
    const double next = r.uniform(a, b);
    auto pre = prefix_backwards(r, pv, k, tk, j, true);
    if (!pre) return std::nullopt;
    std::vector<double> t = *pre;
    t.push_back(next);
    continue_terms(r, t, 2);
    const ZeroSequence tau(t, 1.0);
    if (violation(tau, FirstReducedFamily{pv})) return std::nullopt;
    const ZeroSequence gamma = with_term(tau, k + 1, tk + 2.0 / 3.0);
    json w{{"p", pv}, {"j", j}, {"k", k}, {"tau", terms_json(tau)}};
    if (const auto v = violation(gamma, FirstReducedFamily{pv})) return broken(w, "gamma leaves T1: " + *v);
    return outcome(Claim::Strict, of(ep_difference(tau, gamma, p)), w);
}

// Existence claim: the proof's candidate first, then other single-term moves onto τ_{k+2} = τ_{k+1} + 2/3.
std::optional<Outcome> tighten_after_midpoint(Rng& r) {
    const double pv = r.uniform(3.0 + 1e-6, 4.0 - 1e-6);
    const Exponent p(pv);
    const long j = r.integer(0, 1);
    const double shift = 4.0 * static_cast<double>(j) / pv;
    const std::size_t k = static_cast<std::size_t>(r.integer(j == 0 ? 1 : 3, 7));
    const double dk = static_cast<double>(k);
    const double xi = dk - shift;
    const double m = midpoint(xi, p);
    const double tk_lo = std::max(k >= 2 ? dk - 1.0 - shift + 2.0 / pv : min_first(pv),
                                  min_first(pv) + (dk - 1.0) * 2.0 / 3.0);
    const double tk_hi = std::min(dk, xi + p.hump() - 0.01 - 2.0 / 3.0);
    if (tk_lo > tk_hi) return std::nullopt;
    const double tk = edgy(r, tk_lo, tk_hi);
    const double n_lo = std::max(tk + 2.0 / 3.0, pv > 3.6 ? m : -1e9);
    const double n_hi = xi + p.hump() - 0.01;
    if (n_lo > n_hi) return std::nullopt;
    const double next = edgy(r, n_lo, n_hi);
    auto pre = prefix_backwards(r, pv, k, tk, j, true);
    if (!pre) return std::nullopt;
    std::vector<double> t = *pre;
    t.push_back(next);
    const double a2 = next + 2.0 / 3.0 + 0.01;
    t.push_back(edgy(r, a2, std::max(a2, std::min(dk + 2.0, next + 1.2))));
    continue_terms(r, t, 2);
    const ZeroSequence tau(t, 1.0);
    if (violation(tau, FirstReducedFamily{pv})) return std::nullopt;

    struct Candidate {
        const char* name;
        ZeroSequence seq;
    };
    std::vector<Candidate> cands;
    const double after = tau[k + 2];
    if (after >= m + 1.0)
        cands.push_back({"right-endpoint", with_term(tau, k + 1, xi + p.hump())});
    else
        cands.push_back({"tighten-next", with_term(tau, k + 2, next + 2.0 / 3.0)});
    // closing the gap from the left: τ_{k+1} moves up inside the increasing part of S
    cands.push_back({"raise-current", with_term(tau, k + 1, std::min(after - 2.0 / 3.0, xi + p.hump()))});
    cands.push_back({"right-endpoint-fallback", with_term(tau, k + 1, xi + p.hump())});
    if (tk + 2.0 / 3.0 < next) cands.push_back({"tighten-current-fallback", with_term(tau, k + 1, tk + 2.0 / 3.0)});

    json w{{"p", pv}, {"j", j}, {"k", k}, {"xi", xi}, {"tau", terms_json(tau)}};
    std::optional<Outcome> best;
    for (const auto& c : cands) {
        if (violation(c.seq, FirstReducedFamily{pv})) continue;
        json wc = w;
        wc["candidate"] = c.name;
        Outcome o = outcome(Claim::Strict, of(ep_difference(tau, c.seq, p)), wc);
        if (!best || o.adjusted() > best->adjusted()) best = std::move(o);
        if (best->holds()) break;  // the proof's candidate comes first
    }
    if (!best) return broken(w, "no candidate in T1");
    return best;
}

// ---------------------------------------------------------------- the second reduced family

std::optional<Outcome> reduced_family_sup(Rng& r) {
    const double pv = r.uniform(3.0 + 1e-6, 4.0 - 1e-6);
    const Exponent p(pv);
    const SeparationParams d{min_first(pv), 2.0 / 3.0};
    const ZeroSequence lambda = ZeroSequence::shifted_integers(-1.0 + 2.0 / pv, 1);
    json w{{"p", pv}};
    if (const auto v = violation(lambda, SecondReducedFamily{pv})) return broken(w, "lambda not in T2: " + *v);
    const ZeroSequence tau(free_terms(r, static_cast<std::size_t>(r.integer(2, 8)), d.delta1, d.delta2, 0.8),
                           r.uniform(d.delta2, 1.0));
    w["tau"] = terms_json(tau);
    return outcome(Claim::Weak, of(ep_difference(tau, lambda, p)), w);
}

std::optional<Outcome> shift_right_improves(Rng& r) {
    const double pv = r.uniform(3.0 + 1e-6, 4.0 - 1e-6);
    const Exponent p(pv);
    const auto d = second_family(r, pv, static_cast<std::size_t>(r.integer(5, 14)), 0.3);
    if (!d || d->blocks.empty()) return std::nullopt;
    const ZeroSequence tau(d->terms, 1.0);
    json w{{"p", pv}, {"tau", terms_json(tau)}, {"blocks", blocks_json(d->blocks)}};
    if (const auto v = violation(tau, SecondReducedFamily{pv})) return broken(w, "generated tau not in T2: " + *v);
    const ZeroSequence gamma = shift_right(tau, pv);
    if (const auto v = violation(gamma, SecondReducedFamily{pv})) return broken(w, "gamma leaves T2: " + *v);
    return outcome(Claim::Strict, of(ep_difference(tau, gamma, p)), w);
}

std::optional<Outcome> local_shift(Rng& r, bool type_a) {
    const double pv = type_a ? r.uniform(3.0 + 1e-6, 4.0 - 1e-6) : r.uniform(3.6 + 1e-6, 4.0 - 1e-6);
    const Exponent p(pv);
    const std::size_t k = static_cast<std::size_t>(r.integer(1, 8));
    const double y = type_a ? edgy(r, 0.5 - 1.0 / pv, ymax(pv) - 1e-9) : 0.0;
    const auto d = second_family(r, pv, k + 6 + static_cast<std::size_t>(r.integer(0, 3)), 0.2,
                                 Block{k, 0.0, type_a, y});
    if (!d) return std::nullopt;
    const ZeroSequence tau(d->terms, 1.0);
    const Block& b = *std::find_if(d->blocks.begin(), d->blocks.end(), [&](const Block& x) { return x.k == k; });
    json w{{"p", pv}, {"k", k}, {"xi", b.xi}, {"y", y}, {"tau", terms_json(tau)}, {"blocks", blocks_json(d->blocks)}};
    if (const auto v = violation(tau, SecondReducedFamily{pv})) return broken(w, "generated tau not in T2: " + *v);
    const ZeroSequence gamma = shift_after(tau, k);
    if (const auto v = violation(gamma, SecondReducedFamily{pv})) return broken(w, "gamma leaves T2: " + *v);
    const double rcut = b.xi + (type_a ? 3.0 : 2.0) - 2.0 / pv;
    w["r"] = rcut;
    return outcome(Claim::Strict, of(ep_truncated_difference(tau, gamma, p, rcut)), w);
}

std::optional<Outcome> local_shift_a(Rng& r) { return local_shift(r, true); }
std::optional<Outcome> local_shift_b(Rng& r) { return local_shift(r, false); }

// ---------------------------------------------------------------- elementary estimates

// For decreasing f ≥ 0: f(b)·∫sin² ≤ ∫ f sin²((p/2)πx) ≤ f(a)·∫sin².
std::optional<Outcome> monotone_weight_bounds(Rng& r) {
    const double pv = r.uniform(2.0, 6.0);
    const double a = r.uniform(0.0, 5.0), b = a + r.uniform(0.01, 3.0);
    const double alpha = r.uniform(0.1, 2.0), beta = r.uniform(0.1, 3.0), q = r.uniform(0.5, 3.0);
    const long kind = r.integer(0, 2);
    const auto f = [&](double x) {
        if (kind == 0) return alpha / std::pow(x + beta, q);
        if (kind == 1) return alpha * std::exp(-beta * x);
        return alpha;
    };
    const double c = 0.5 * pv * pi;
    const Estimate I = integrate([&](double x) { return f(x) * std::sin(c * x) * std::sin(c * x); }, a, b, 1e-14,
                                 1e-13, 500);
    const double mass = 0.5 * (b - a + (std::sin(pv * pi * a) - std::sin(pv * pi * b)) / (pv * pi));
    const double lower = f(b) * mass, upper = f(a) * mass;
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * (std::fabs(upper) + std::fabs(I.value));
    const Diff d{std::min(I.value - lower, upper - I.value), 2.0 * I.error + rounding};
    return outcome(Claim::Weak, d, {{"p", pv}, {"a", a}, {"b", b}, {"weight", kind == 0 ? "power" : kind == 1 ? "exp" : "const"}});
}

// c₁(F(b) − F(a)) ≤ ∫ sin²(tx) f ≤ c₂(F(b) − F(a)) for f = F′ ≥ 0 and c₁ ≤ sin²(tx) ≤ c₂ on [a, b].
std::optional<Outcome> sin_square_bounds(Rng& r) {
    const double t = r.uniform(0.5, 10.0);
    const double a = r.uniform(0.0, 5.0), b = a + r.uniform(0.01, 2.0);
    const double alpha = r.uniform(0.1, 2.0), beta = r.uniform(0.1, 3.0);
    const auto F = [&](double x) { return -alpha / (x + beta); };
    const auto f = [&](double x) { return alpha / ((x + beta) * (x + beta)); };
    // range of cos(2tx) over [a, b]
    const double u0 = 2.0 * t * a, u1 = 2.0 * t * b;
    double cmax = std::max(std::cos(u0), std::cos(u1)), cmin = std::min(std::cos(u0), std::cos(u1));
    if (std::floor(u1 / (2.0 * pi)) > std::floor(u0 / (2.0 * pi))) cmax = 1.0;
    if (std::floor((u1 - pi) / (2.0 * pi)) > std::floor((u0 - pi) / (2.0 * pi))) cmin = -1.0;
    const double c1 = 0.5 * (1.0 - cmax), c2 = 0.5 * (1.0 - cmin);
    const Estimate I = integrate([&](double x) { return std::sin(t * x) * std::sin(t * x) * f(x); }, a, b, 1e-14,
                                 1e-13, 500);
    const double dF = F(b) - F(a);
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * (std::fabs(dF) + std::fabs(I.value));
    const Diff d{std::min(I.value - c1 * dF, c2 * dF - I.value), 2.0 * I.error + rounding};
    return outcome(Claim::Weak, d, {{"t", t}, {"a", a}, {"b", b}, {"c1", c1}, {"c2", c2}});
}

std::optional<Outcome> trig_floor(Rng& r) {
    const double pv = r.chance(0.02) ? (r.chance(0.5) ? 3.0 : 4.0) : r.uniform(3.0, 4.0);
    const Estimate e = appendix_margin_estimate("trig-floor", 0.0, pv, 0.0);
    return outcome(Claim::Weak, of(e), {{"p", pv}});
}

// ---------------------------------------------------------------- registry

const std::vector<Check>& registry() {
    static const std::vector<Check> all = {
        {"neighbor-geometry", "for 2<p<6 exactly one level-(n+1) interval meets (xi, xi+2/p), namely (xi+1-4/p, xi+1-2/p); none for p in {2,6}", 10000, neighbor_geometry},
        {"exchange-max-left", "2<=p<=4: S(t) on [xi+1-4/p, xi+1] is maximal at xi+1-4/p", 10000, exchange_max_left},
        {"exchange-valley", "2<=p<=4: S decreases up to the midpoint, increases up to xi+2/p, then is constant", 10000, exchange_valley},
        {"clip-to-integers", "2<=p<=4: gamma_n = min(tau_n, n) stays in T(delta) and does not lower E_p", 1000, clip_to_integers},
        {"ray-sum-low", "2<=p<=4, tau_n <= n: E_p equals the sum of the ray contributions", 1000, ray_sum_low},
        {"ray-bound-low", "2<=p<=4: the k-th ray contributes at most its first hump, with equality iff p=4 or tau_{k+1} >= k+2/p", 5000, ray_bound_low},
        {"clip-to-right-endpoints", "3<p<4: clipping every term to the right endpoint of its interval stays in T1 and does not lower E_p", 1000, clip_to_right_endpoints},
        {"snap-to-right-endpoint", "3<p<3.6: moving tau_{k+1} in [xi+5/6-1/p, xi+2/p) to xi+2/p stays in T1 and raises E_p", 5000, snap_to_right_endpoint},
        {"tighten-below-midpoint", "3.6<p<4: a first crossing below the midpoint gains from tau_{k+1} = tau_k + 2/3", 5000, tighten_below_midpoint},
        {"tighten-after-midpoint", "3<p<4: above the midpoint, tau_{k+2} != tau_{k+1} + 2/3 admits a strictly better sequence in T1", 5000, tighten_after_midpoint},
        {"reduced-family-sup", "3<p<4: lambda lies in T2 and E_p(tau) <= E_p(lambda) on T(min(2/pi,2/p), 2/3)", 1000, reduced_family_sup},
        {"shift-right-improves", "3<p<4: shifting a sequence of T2 other than lambda one step right stays in T2 and raises E_p", 3000, shift_right_improves},
        {"local-shift-case-a", "3<p<4: the local shift after a tightened block raises the truncated energy below xi+3-2/p", 5000, local_shift_a},
        {"local-shift-case-b", "3.6<p<4: the local shift after a short block raises the truncated energy below xi+2-2/p", 5000, local_shift_b},
        {"exchange-max-mid", "4<=p<=6: S(t) on [xi, xi+4/p] is maximal at the midpoint", 10000, exchange_max_mid},
        {"pull-left-high", "4<p<=6: moving tau_{n+1} = m_xi + 4/p back to m_xi raises E_p", 5000, pull_left_high},
        {"clip-high", "4<=p<=6: gamma_n = min(tau_n, n-1/2+3/p) stays in T(delta) and does not lower E_p", 1000, clip_high},
        {"ray-sum-high", "4<=p<=6, tau_n <= n-1/2+3/p: E_p equals the sum of the ray contributions", 1000, ray_sum_high},
        {"ray-bound-high", "4<=p<=6: the k-th ray has at most three consecutive nonzero terms and is bounded by its two-level maximum", 5000, ray_bound_high},
        {"first-rays-high", "4<p<=5: tau_1 = 1/2 loses to gamma_1 = 1/2+3/p on the first two rays", 5000, first_rays_high},
        {"first-rays-high-at-4", "p=4: the first-two-rays comparison is an equality in its extremal configuration", 2000, first_rays_high_at_4},
        {"monotone-weight-bounds", "decreasing weights: f(b), f(a) times the sin^2 mass bound the weighted integral", 10000, monotone_weight_bounds},
        {"sin-square-bounds", "c1 <= sin^2 <= c2 bounds the integral of sin^2 times a derivative", 10000, sin_square_bounds},
        {"trig-floor", "2 sin(2p pi/3) cos(p pi/3) + 0.14 p pi >= 0 on [3, 4]", 10000, trig_floor},
    };
    return all;
}

const Check& find_check(const std::string& id) {
    for (const auto& c : registry())
        if (c.id == id) return c;
    throw DomainError("unknown lemma id '" + id + "'");
}

}  // namespace

std::vector<std::string> lemma_ids() {
    std::vector<std::string> out;
    for (const auto& c : registry()) out.push_back(c.id);
    return out;
}

std::size_t default_samples(const std::string& lemma_id) { return find_check(lemma_id).samples; }

LemmaCheckReport check_lemma(const std::string& lemma_id, std::size_t samples, std::uint64_t seed) {
    const Check& check = find_check(lemma_id);
    const std::size_t count = samples == 0 ? check.samples : samples;
    std::vector<Outcome> results(count);
    parallel_for(count, [&](std::size_t i) {
        Rng rng(seed, i);
        for (int attempt = 0; attempt < max_attempts; ++attempt) {
            try {
                if (auto o = check.sample(rng)) {
                    o->witness["attempts"] = attempt + 1;
                    results[i] = std::move(*o);
                    return;
                }
            } catch (const std::exception& e) {
                results[i] = broken({}, std::string("exception: ") + e.what());
                return;
            }
        }
        results[i] = broken({}, "no admissible draw in " + std::to_string(max_attempts) + " attempts");
    });

    std::size_t worst = 0;
    bool passed = true;
    for (std::size_t i = 0; i < count; ++i) {
        passed = passed && results[i].holds();
        if (results[i].adjusted() < results[worst].adjusted()) worst = i;
    }
    LemmaCheckReport r;
    r.lemma_id = check.id;
    r.claim = check.claim;
    r.samples = count;
    r.seed = seed;
    r.passed = passed;
    if (count > 0) {
        json w = results[worst].witness;
        w["sample"] = worst;
        r.min_margin = results[worst].adjusted();
        r.witness = w.dump();
    } else {
        r.witness = "{}";
    }
    return r;
}

}  // namespace pwb
