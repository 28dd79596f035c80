#include "pwb/sequence.hpp"

#include "pwb/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <string>

namespace pwb {

void SeparationParams::validate() const {
    if (!(delta1 > 0.0 && delta1 <= 1.0)) throw DomainError("delta1 must lie in (0, 1]");
    if (!(delta2 > 0.0 && delta2 <= 1.0)) throw DomainError("delta2 must lie in (0, 1]");
}

ZeroSequence::ZeroSequence(std::vector<double> explicit_terms, double tail_step)
    : terms_(std::move(explicit_terms)), step_(tail_step) {
    if (!(step_ > 0.0 && step_ <= 1.0)) throw DomainError("tail step must lie in (0, 1]");
    double prev = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (!std::isfinite(terms_[i]) || !(terms_[i] > prev))
            throw DomainError("sequence not strictly increasing at n = " + std::to_string(i + 1));
        prev = terms_[i];
    }
}

ZeroSequence ZeroSequence::shifted_integers(double offset, std::size_t count, double tail_step) {
    std::vector<double> t(count);
    for (std::size_t n = 1; n <= count; ++n) t[n - 1] = static_cast<double>(n) + offset;
    if (count == 0 && offset != 0.0) throw DomainError("shifted_integers needs at least one explicit term");
    return ZeroSequence(std::move(t), tail_step);
}

double ZeroSequence::operator[](std::size_t n) const noexcept {
    if (n == 0) return 0.0;
    const std::size_t N = terms_.size();
    if (n <= N) return terms_[n - 1];
    const double anchor = N == 0 ? 0.0 : terms_[N - 1];
    return anchor + static_cast<double>(n - N) * step_;
}

std::optional<std::size_t> ZeroSequence::stripe_of(double x) const {
    if (!(x > 0.0)) return std::nullopt;
    const std::size_t N = terms_.size();
    std::size_t n;
    if (N > 0 && x <= terms_[N - 1]) {
        // first explicit term ≥ x, then step back one
        std::size_t lo = 0, hi = N - 1;
        while (lo < hi) {
            std::size_t m = (lo + hi) / 2;
            if (terms_[m] >= x) hi = m; else lo = m + 1;
        }
        n = lo;  // τ_n < x ≤ τ_{n+1} with τ_{lo+1} = terms_[lo]
    } else {
        const double anchor = (*this)[N];
        n = N + static_cast<std::size_t>(std::floor((x - anchor) / step_));
        while (n > N && (*this)[n] >= x) --n;
        while ((*this)[n + 1] < x) ++n;
    }
    if ((*this)[n + 1] == x || (*this)[n] == x) return std::nullopt;
    return n;
}

ZeroSequence ZeroSequence::extended(std::size_t count) const {
    std::vector<double> t = terms_;
    for (std::size_t n = terms_.size() + 1; n <= count; ++n) t.push_back((*this)[n]);
    return ZeroSequence(std::move(t), step_);
}

std::optional<std::size_t> common_suffix(const ZeroSequence& a, const ZeroSequence& b) {
    if (a.step_ != b.step_) return std::nullopt;
    const std::size_t K = std::max(a.tail_start(), b.tail_start());
    if (std::fabs(a[K] - b[K]) > 1e-12) return std::nullopt;
    std::size_t m = K;
    while (m > 0 && a[m - 1] == b[m - 1]) --m;
    return m;
}

namespace {

double number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) throw ParseError(std::string("missing numeric field '") + key + "'");
    return j[key].get<double>();
}

}  // namespace

SequenceFile parse_sequence_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("sequence file must hold a JSON object");
    if (!j.contains("explicit") || !j["explicit"].is_array()) throw ParseError("missing array field 'explicit'");

    SequenceFile out;
    if (j.contains("p")) out.p = number(j, "p");
    if (j.contains("delta1") || j.contains("delta2")) out.separation = SeparationParams{number(j, "delta1"), number(j, "delta2")};

    std::vector<double> terms;
    for (const auto& v : j["explicit"]) {
        if (!v.is_number()) throw ParseError("'explicit' must contain numbers only");
        terms.push_back(v.get<double>());
    }
    const double step = j.contains("tail_step") ? number(j, "tail_step") : 1.0;
    if (j.contains("tail_start")) {
        if (!j["tail_start"].is_number_integer() || j["tail_start"].get<long long>() != static_cast<long long>(terms.size()))
            throw ParseError("'tail_start' must equal the number of explicit terms");
    }
    try {
        out.tau = ZeroSequence(std::move(terms), step);
        if (out.separation) out.separation->validate();
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    return out;
}

std::string to_json(const ZeroSequence& tau, std::optional<double> p, std::optional<SeparationParams> d) {
    nlohmann::json j;
    if (p) j["p"] = *p;
    if (d) {
        j["delta1"] = d->delta1;
        j["delta2"] = d->delta2;
    }
    j["explicit"] = tau.explicit_terms();
    j["tail_step"] = tau.tail_step();
    j["tail_start"] = tau.tail_start();
    return j.dump();
}

}  // namespace pwb
