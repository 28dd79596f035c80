#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pwb {

struct SeparationParams {
    double delta1 = 1.0;
    double delta2 = 1.0;

    // throws DomainError unless 0 < δ₁, δ₂ ≤ 1
    void validate() const;
};

// τ₀ = 0 < τ₁ < ... < τ_N given explicitly, then τ_n = τ_N + (n − N)·s.
class ZeroSequence {
public:
    ZeroSequence(std::vector<double> explicit_terms, double tail_step);

    // τ_n = n + offset for every n ≥ 1, with `count` terms stored explicitly
    static ZeroSequence shifted_integers(double offset, std::size_t count, double tail_step = 1.0);

    double operator[](std::size_t n) const noexcept;
    std::size_t tail_start() const noexcept { return terms_.size(); }
    double tail_step() const noexcept { return step_; }
    const std::vector<double>& explicit_terms() const noexcept { return terms_; }

    // level n with τ_n < x < τ_{n+1}; nullopt when x ≤ 0 or x is one of the τ_k
    std::optional<std::size_t> stripe_of(double x) const;

    // same sequence with the first `count` terms stored explicitly (count ≥ tail_start)
    ZeroSequence extended(std::size_t count) const;

    // first index from which a and b coincide forever, if their tails agree
    friend std::optional<std::size_t> common_suffix(const ZeroSequence& a, const ZeroSequence& b);

    bool operator==(const ZeroSequence&) const = default;

private:
    std::vector<double> terms_;
    double step_;
};

struct SequenceFile {
    std::optional<double> p;
    std::optional<SeparationParams> separation;
    ZeroSequence tau{{}, 1.0};
};

// {p, delta1, delta2, explicit:[...], tail_step, tail_start}; throws ParseError
SequenceFile parse_sequence_json(const std::string& text);
std::string to_json(const ZeroSequence& tau, std::optional<double> p = {},
                    std::optional<SeparationParams> d = {});

}  // namespace pwb
