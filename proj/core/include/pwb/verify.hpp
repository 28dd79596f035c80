#pragma once

#include "pwb/numeric.hpp"
#include "pwb/quadrature.hpp"
#include "pwb/sequence.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pwb {

enum class SearchMode { Exhaustive, Ascent };

struct OptimizerConfig {
    int n_explicit = 5;
    double grid_step = 0.01;
    int restarts = 8;
    std::uint64_t rng_seed = 1;
    SearchMode mode = SearchMode::Ascent;
    double upper_slack = 0.5;  // τ_n searched on [δ₁ + (n−1)δ₂, n + upper_slack]
};

struct OptimizeResult {
    ZeroSequence best{{}, 1.0};
    Bracket value;             // full ep of the best sequence
    std::size_t evaluated = 0; // sequences (exhaustive) or line-search candidates (ascent) scored
};

// Grid search over T(δ₁, δ₂) with n_explicit free terms and a unit-step tail.
OptimizeResult brute_force_sup(const Exponent& p, const SeparationParams& d, const OptimizerConfig& cfg,
                               const QuadSettings& s = {});

struct LemmaCheckReport {
    std::string lemma_id;
    std::string claim;
    std::size_t samples = 0;
    double min_margin = 0.0;  // slack-adjusted: must be > 0 (strict claims) or ≥ 0 (weak claims)
    std::string witness;      // JSON object of the most adverse sample
    bool passed = false;
    std::uint64_t seed = 0;
};

std::string to_json(const LemmaCheckReport& r);

std::vector<std::string> lemma_ids();
std::size_t default_samples(const std::string& lemma_id);

// samples == 0 uses the registry default. Throws DomainError for unknown ids.
LemmaCheckReport check_lemma(const std::string& lemma_id, std::size_t samples, std::uint64_t seed);

// Cases whose positivity is claimed; the sweep suite runs exactly these.
std::vector<std::string> appendix_cases();

// Signed margin of an appendix inequality at (ξ, p, y). One-parameter cases ignore ξ and y.
// Throws DomainError naming the box when the point is outside it.
Estimate appendix_margin_estimate(const std::string& case_id, double xi, double p, double y);
double appendix_margin(const std::string& case_id, double xi, double p, double y);

struct SweepSpec {
    int n_xi = 12;
    double xi_max = 50.0;
    std::vector<double> spot_xi{100.0, 1000.0};
    int n_p = 12;
    int n_y = 8;
    int refine = 200;  // random points around the worst grid point
};

LemmaCheckReport sweep_appendix(const std::string& case_id, const SweepSpec& spec, std::uint64_t seed);

}  // namespace pwb
