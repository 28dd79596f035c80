#pragma once

#include "pwb/kernel.hpp"
#include "pwb/numeric.hpp"
#include "pwb/quadrature.hpp"
#include "pwb/sequence.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pwb {

// T₁(p) and T₂(p): the reduced families of the low regime 3 < p < 4.
struct FirstReducedFamily {
    double p;
};
struct SecondReducedFamily {
    double p;
};
using Family = std::variant<SeparationParams, FirstReducedFamily, SecondReducedFamily>;

struct Violation {
    std::size_t index = 0;
    std::string clause;
};

struct MembershipReport {
    std::optional<Violation> violation;

    bool ok() const noexcept { return !violation; }
    explicit operator bool() const noexcept { return ok(); }
};

inline constexpr double feasibility_tol = 1e-12;

MembershipReport validate_membership(const ZeroSequence& tau, const Family& family);

// y_max of the second reduced family
double second_family_ymax(double p);

// ∫_a^b max(0, K)² over (a, b) with K carrying the level-n phase.
Estimate level_integral(double a, double b, long n, const Exponent& p, const QuadSettings& s = {});

// Contribution of stripe (τ_n, τ_{n+1}) at level n.
Estimate ep_level(const ZeroSequence& tau, std::size_t n, const Exponent& p, const QuadSettings& s = {});

// E_p(τ) = ∫_0^∞ max(0, K_p(τ; x))² dx
Bracket ep(const ZeroSequence& tau, const Exponent& p, const QuadSettings& s = {});

// E_p restricted to (0, r), i.e. the sequence with τ_n replaced by min(τ_n, r)
Estimate ep_truncated(const ZeroSequence& tau, const Exponent& p, double r, const QuadSettings& s = {});

// E_p(to) − E_p(from); stripes and tails the two share drop out exactly.
Bracket ep_difference(const ZeroSequence& from, const ZeroSequence& to, const Exponent& p,
                      const QuadSettings& s = {});
Estimate ep_truncated_difference(const ZeroSequence& from, const ZeroSequence& to, const Exponent& p, double r,
                                 const QuadSettings& s = {});

// The two-integral local objective S(τ_{n+1}) for the level-n interval (ξ, ξ + 2/p).
Estimate s_local(double tau_next, double xi, long n, const Exponent& p, Regime regime,
                 const QuadSettings& s = {});

struct RayIndex {
    long k = 0;
    Regime regime = Regime::Low;
};

// Piece I_{k,j} of a ray; it only counts inside stripe (τ_level, τ_{level+1}).
struct RayPiece {
    long j = 0;
    LevelInterval interval;
};

// ϱ: 2 − 4/p in the low regime, 1 − 4/p in the high regime
double ray_spacing(Regime regime, const Exponent& p);

std::vector<RayPiece> ray_intervals(RayIndex k, const Exponent& p, long j_max);

struct RayTerm {
    long j = 0;
    long level = 0;
    Estimate value;
};

// The nonzero summands of A_p(τ; k).
std::vector<RayTerm> ray_terms(const ZeroSequence& tau, RayIndex k, const Exponent& p, const QuadSettings& s = {});

// A_p(τ; k)
Bracket ray_contribution(const ZeroSequence& tau, RayIndex k, const Exponent& p, const QuadSettings& s = {});

// Σ_k A_p(τ; k), rays beyond the explicit prefix enclosed as a periodic series.
Bracket ray_sum(const ZeroSequence& tau, Regime regime, const Exponent& p, const QuadSettings& s = {});

}  // namespace pwb
