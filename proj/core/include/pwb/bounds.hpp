#pragma once

#include "pwb/numeric.hpp"
#include "pwb/quadrature.hpp"
#include "pwb/sequence.hpp"

#include <string>
#include <vector>

namespace pwb {

enum class Method { CorollaryLow, CorollaryHigh, Brevig, PowerTrickCeil, HalfP };

std::string to_string(Method m);

struct BoundResult {
    double p = 0.0;
    Bracket value;
    Method method = Method::CorollaryLow;
    Bracket ratio_to_p;
    std::string hypotheses;  // the closed form and δ-range the value rests on
};

// Σ_{n≥0} ∫_n^{n+2/p} sin²((p/2)π(x − n))/(π²x²) dx, the supremum for 2 ≤ p ≤ 4.
// Throws RangeError naming the failed hypothesis when δ is outside the proven ranges.
Bracket sup_value_low(const Exponent& p, const SeparationParams& d, const QuadSettings& s = {});

// First hump plus two interleaved level series, the supremum for 4 ≤ p ≤ 5 (≤ 6 on the weak range).
Bracket sup_value_high(const Exponent& p, const SeparationParams& d, const QuadSettings& s = {});

// Separation parameters the upper bound for C_p uses in each regime.
SeparationParams corollary_separation(Regime r);

// 2·sup_value on the requested branch; the branch must contain p.
BoundResult cp_upper_via(double p, Method branch, const QuadSettings& s = {});

// Upper bound for C_p on [2, 5]; at p = 4 both branches are evaluated and must agree.
BoundResult cp_upper(double p, const QuadSettings& s = {});

// B(p) = 2(∫_0^{2/p} + ∫_1^∞ sin²((p/2)π(x − 1))/(π²x²) dx), Brevig's bound for 2 ≤ p ≤ 4.
Bracket brevig_bound(double p, const QuadSettings& s = {});

// Earlier bounds: p/2, ⌈p/2⌉, and B(p) extended by the power trick as 2·B(p/2) above 4.
BoundResult cp_reference(double p, Method method, const QuadSettings& s = {});

struct FigureRow {
    double p = 0.0;
    Bracket new_over_p;
    double reference_over_p = 0.0;
};

std::vector<FigureRow> figure1_table(double p_min, double p_max, double step, const QuadSettings& s = {});
std::string figure1_csv(const std::vector<FigureRow>& rows);

}  // namespace pwb
