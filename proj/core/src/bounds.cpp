#include "pwb/bounds.hpp"

#include "pwb/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pwb {

namespace {

constexpr double tol = 1e-12;

bool within(double v, double lo, double hi) { return v >= lo - tol && v <= hi + tol; }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

BoundResult make_result(double p, Bracket value, Method m, std::string hypotheses) {
    return {p, value, m, {value.lo / p, value.hi / p}, std::move(hypotheses)};
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
    case Method::CorollaryLow: return "corollary_low";
    case Method::CorollaryHigh: return "corollary_high";
    case Method::Brevig: return "brevig";
    case Method::PowerTrickCeil: return "power_trick_ceil";
    case Method::HalfP: return "half_p";
    }
    return "unknown";
}

Bracket sup_value_low(const Exponent& p, const SeparationParams& d, const QuadSettings& s) {
    const double q = p.value();
    if (!p.low()) throw RangeError("p = " + fmt(q) + " outside [2, 4] required by the low-regime closed form");
    const bool integer_window = within(d.delta1, std::min(2.0 / pi, 2.0 / q), 1.0) && within(d.delta2, 2.0 / 3.0, 1.0);
    const bool separated = within(d.delta1, 1.0 - 2.0 / q, 1.0) && within(d.delta2, 2.0 - 4.0 / q, 1.0);
    if (!integer_window && !separated)
        throw RangeError("(delta1, delta2) = (" + fmt(d.delta1) + ", " + fmt(d.delta2) +
                         ") violates both proven ranges: min(2/pi, 2/p) <= delta1 <= 1 with 2/3 <= delta2 <= 1, "
                         "or 1-2/p <= delta1 <= 1 with 2-4/p <= delta2 <= 1");
    return level_series({0.0, p.hump(), 1.0, 0.0, 1.0, Shape::PositivePart}, p, s);
}

Bracket sup_value_high(const Exponent& p, const SeparationParams& d, const QuadSettings& s) {
    const double q = p.value();
    if (!p.high()) throw RangeError("p = " + fmt(q) + " outside [4, 6] required by the high-regime closed form");
    const bool sharp = q <= 5.0 + tol && within(d.delta1, 0.5, 0.5 + 3.0 / q) && within(d.delta2, 1.0 - 2.0 / q, 1.0);
    const bool weak = within(d.delta1, 1.0 - 2.0 / q, 0.5 + 3.0 / q) && within(d.delta2, 1.0 - 2.0 / q, 1.0);
    if (!sharp && !weak)
        throw RangeError("(delta1, delta2) = (" + fmt(d.delta1) + ", " + fmt(d.delta2) +
                         ") violates both proven ranges: p <= 5 with 1/2 <= delta1 <= 1/2+3/p, "
                         "or 1-2/p <= delta1 <= 1/2+3/p; both need 1-2/p <= delta2 <= 1");
    const double half = 0.5 - 1.0 / q;
    Bracket total = weighted_hump_estimate(0.0, p.hump(), 0.0, p, s).bracket();
    total += level_series({p.period(), half, 1.0, 0.0, 1.0, Shape::PositivePart}, p, s);
    total += level_series({0.5 + 3.0 / q, half, 1.0, 1.0, 1.0, Shape::PositivePart}, p, s);
    return total;
}

SeparationParams corollary_separation(Regime r) {
    return r == Regime::Low ? SeparationParams{2.0 / pi, 2.0 / 3.0} : SeparationParams{0.5, 0.6};
}

BoundResult cp_upper_via(double p, Method branch, const QuadSettings& s) {
    if (branch == Method::CorollaryLow) {
        if (!(p >= 2.0 && p <= 4.0)) throw RangeError("p outside [2,4] for the low-regime bound");
        const Bracket v = 2.0 * sup_value_low(Exponent(p), corollary_separation(Regime::Low), s);
        return make_result(p, v, branch,
                           "C_p <= 2 E_p(2/pi, 2/3); supremum attained by tau_n in [n-1+2/p, n]; "
                           "value 2 sum_n int_n^{n+2/p} sin^2((p/2)pi(x-n))/(pi^2 x^2) dx");
    }
    if (branch == Method::CorollaryHigh) {
        if (!(p >= 4.0 && p <= 5.0)) throw RangeError("p outside [4,5] for the high-regime bound");
        const Bracket v = 2.0 * sup_value_high(Exponent(p), corollary_separation(Regime::High), s);
        return make_result(p, v, branch,
                           "C_p <= 2 E_p(1/2, 3/5); supremum attained only by tau_n = n-1/2+3/p; "
                           "value 2(first hump + two interleaved level series)");
    }
    throw DomainError("cp_upper_via: branch must be corollary_low or corollary_high");
}

BoundResult cp_upper(double p, const QuadSettings& s) {
    if (!(p >= 2.0 && p <= 5.0)) throw RangeError("p outside [2,5]");
    if (p < 4.0) return cp_upper_via(p, Method::CorollaryLow, s);
    if (p > 4.0) return cp_upper_via(p, Method::CorollaryHigh, s);
    BoundResult low = cp_upper_via(p, Method::CorollaryLow, s);
    const BoundResult high = cp_upper_via(p, Method::CorollaryHigh, s);
    if (std::fabs(low.value.mid() - high.value.mid()) > 1e-9 + low.value.width() + high.value.width())
        throw std::logic_error("cp_upper: the two branches disagree at p = 4");
    low.value = hull(low.value, high.value);
    low.ratio_to_p = {low.value.lo / p, low.value.hi / p};
    low.hypotheses += "; both branches agree at p = 4";
    return low;
}

Bracket brevig_bound(double p, const QuadSettings& s) {
    const Exponent e(p);
    if (!e.low()) throw RangeError("Brevig's bound B(p) needs 2 <= p <= 4");
    Bracket total = weighted_hump_estimate(0.0, e.hump(), 0.0, e, s).bracket();
    // ∫_1^∞ sin²(c(x − 1))/(π²x²): one term per half-period 2/p of sin²
    total += level_series({1.0, e.hump(), e.hump(), 1.0, 0.0, Shape::SinSquared}, e, s);
    return 2.0 * total;
}

BoundResult cp_reference(double p, Method method, const QuadSettings& s) {
    if (!(p >= 2.0 && p <= 5.0)) throw RangeError("p outside [2,5]");
    switch (method) {
    case Method::HalfP: return make_result(p, Bracket::point(p / 2.0), method, "C_p <= p/2");
    case Method::PowerTrickCeil: return make_result(p, Bracket::point(std::ceil(p / 2.0)), method, "C_p <= ceil(p/2)");
    case Method::Brevig:
        if (p <= 4.0) return make_result(p, brevig_bound(p, s), method, "B(p), positive part replaced by sin^2 on (1, inf)");
        return make_result(p, 2.0 * brevig_bound(p / 2.0, s), method, "2 B(p/2) by the power trick (reconstructed)");
    default: throw DomainError("cp_reference: " + to_string(method) + " is not a reference method");
    }
}

std::vector<FigureRow> figure1_table(double p_min, double p_max, double step, const QuadSettings& s) {
    if (!(p_min >= 2.0 && p_min < p_max && p_max <= 5.0)) throw RangeError("figure1 needs 2 <= pmin < pmax <= 5");
    if (!(step > 0.0)) throw DomainError("figure1 step must be positive");
    const auto count = static_cast<std::size_t>(std::floor((p_max - p_min) / step + 1e-9)) + 1;
    std::vector<FigureRow> rows(count);
    parallel_for(count, [&](std::size_t i) {
        const double p = std::min(p_min + static_cast<double>(i) * step, p_max);
        const BoundResult bound = cp_upper(p, s);
        const BoundResult ref = cp_reference(p, Method::Brevig, s);
        rows[i] = {p, bound.ratio_to_p, ref.value.mid() / p};
    });
    return rows;
}

std::string figure1_csv(const std::vector<FigureRow>& rows) {
    std::string out = "p,new_over_p_lo,new_over_p_hi,brevig_over_p\n";
    for (const auto& r : rows)
        out += fmt(r.p) + "," + fmt(r.new_over_p.lo) + "," + fmt(r.new_over_p.hi) + "," + fmt(r.reference_over_p) + "\n";
    return out;
}

}  // namespace pwb
