#pragma once

#include <cmath>
#include <numbers>
#include <string>

namespace pwb {

inline constexpr double pi = std::numbers::pi;

enum class Regime { Low, High };

std::string to_string(Regime r);

// Exponent p of the Paley-Wiener space. Structural geometry is only valid on [2, 6].
class Exponent {
public:
    explicit Exponent(double p);

    double value() const noexcept { return p_; }
    double freq() const noexcept { return 0.5 * p_ * pi; }  // c = (p/2)π
    double hump() const noexcept { return 2.0 / p_; }        // length of a positivity interval
    double period() const noexcept { return 4.0 / p_; }      // spacing of intervals at one level
    bool low() const noexcept { return p_ <= 4.0; }
    bool high() const noexcept { return p_ >= 4.0; }
    bool supports(Regime r) const noexcept { return r == Regime::Low ? low() : high(); }

private:
    double p_;
};

// Closed enclosure [lo, hi] of a real number.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;

    static Bracket point(double v) { return {v, v}; }
    static Bracket around(double v, double err) { return {v - err, v + err}; }

    double width() const noexcept { return hi - lo; }
    double mid() const noexcept { return 0.5 * (lo + hi); }
    bool contains(double v) const noexcept { return lo <= v && v <= hi; }
    bool overlaps(const Bracket& o) const noexcept { return lo <= o.hi && o.lo <= hi; }

    Bracket& operator+=(const Bracket& o) {
        lo += o.lo;
        hi += o.hi;
        return *this;
    }
    friend Bracket operator+(Bracket a, const Bracket& b) { return a += b; }
    friend Bracket operator-(const Bracket& a, const Bracket& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    // scaling by a nonnegative factor
    friend Bracket operator*(double s, const Bracket& b) { return {s * b.lo, s * b.hi}; }
};

Bracket hull(const Bracket& a, const Bracket& b);

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace pwb
