#include "pwb/objective.hpp"
#include "pwb/parallel.hpp"
#include "pwb/random.hpp"
#include "pwb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pwb {

namespace {

constexpr double improve_tol = 1e-12;
constexpr long tail_cutoff = 400;  // levels summed explicitly in the tail table

// τ_n = i_n·h on a grid. Every candidate sequence is scored through per-level prefix
// tables G_n(i) = ∫_{lo_n h}^{ih} at level n and a tail table for the unit-step continuation,
// so a sequence costs N lookups instead of a full quadrature.
class GridObjective {
public:
    GridObjective(const Exponent& p, const SeparationParams& d, const OptimizerConfig& cfg, const QuadSettings& s)
        : h_(cfg.grid_step), n_(static_cast<std::size_t>(cfg.n_explicit)) {
        gap_ = static_cast<long>(std::ceil(d.delta2 / h_ - 1e-9));
        lo_.resize(n_ + 1);
        hi_.resize(n_ + 1);
        for (std::size_t n = 1; n <= n_; ++n) {
            const double dn = static_cast<double>(n);
            lo_[n] = static_cast<long>(std::ceil((d.delta1 + (dn - 1.0) * d.delta2) / h_ - 1e-9));
            hi_[n] = static_cast<long>(std::floor((dn + cfg.upper_slack) / h_ + 1e-9));
        }
        lo_[0] = hi_[0] = 0;
        // propagate the gap constraint so every index in [lo_n, hi_n] extends to a feasible sequence
        for (std::size_t n = 1; n <= n_; ++n) lo_[n] = std::max(lo_[n], lo_[n - 1] + (n == 1 ? 0 : gap_));
        for (std::size_t n = n_; n-- > 1;) hi_[n] = std::min(hi_[n], hi_[n + 1] - gap_);
        for (std::size_t n = 1; n <= n_; ++n)
            if (lo_[n] > hi_[n]) throw DomainError("brute_force_sup: feasible grid is empty");

        prefix_.resize(n_);
        parallel_for(n_, [&](std::size_t n) {
            // the level-n kernel squared is not integrable at 0 for n ≥ 1, so start at lo_n
            const long base = lo_[n], top = hi_[n + 1];
            std::vector<double>& g = prefix_[n];
            g.assign(static_cast<std::size_t>(top - base) + 1, 0.0);
            CompensatedSum acc;
            for (long i = base + 1; i <= top; ++i) {
                acc += level_integral(x(i - 1), x(i), static_cast<long>(n), p, s).value;
                g[static_cast<std::size_t>(i - base)] = acc.value();
            }
        });

        QuadSettings ts = s;
        ts.tail_level_cutoff = std::min(s.tail_level_cutoff, tail_cutoff);
        const auto count = static_cast<std::size_t>(hi_[n_] - lo_[n_] + 1);
        tail_.resize(count);
        parallel_for(count, [&](std::size_t k) {
            const LevelTerm t{x(lo_[n_] + static_cast<long>(k)), 1.0, 1.0, static_cast<double>(n_), 1.0,
                              Shape::PositivePart};
            tail_[k] = level_series(t, p, ts).mid();
        });
    }

    double x(long i) const { return static_cast<double>(i) * h_; }
    std::size_t size() const { return n_; }
    long gap() const { return gap_; }
    long lo(std::size_t n) const { return lo_[n]; }
    long hi(std::size_t n) const { return hi_[n]; }

    // stripe (i_n h, j h) at level n
    double stripe(std::size_t n, long i, long j) const {
        const auto& g = prefix_[n];
        return g[static_cast<std::size_t>(j - lo_[n])] - g[static_cast<std::size_t>(i - lo_[n])];
    }
    double tail(long i) const { return tail_[static_cast<std::size_t>(i - lo_[n_])]; }

    // idx[0] = 0, idx[1..N]
    double value(const std::vector<long>& idx) const {
        double v = tail(idx[n_]);
        for (std::size_t n = 0; n < n_; ++n) v += stripe(n, idx[n], idx[n + 1]);
        return v;
    }

    // the part of value() that depends on coordinate n
    double local(const std::vector<long>& idx, std::size_t n, long i) const {
        double v = stripe(n - 1, idx[n - 1], i);
        v += n == n_ ? tail(i) : stripe(n, i, idx[n + 1]);
        return v;
    }

    // admissible range of coordinate n given its neighbours
    std::pair<long, long> range(const std::vector<long>& idx, std::size_t n) const {
        const long a = std::max(lo_[n], n == 1 ? lo_[1] : idx[n - 1] + gap_);
        const long b = n == n_ ? hi_[n] : std::min(hi_[n], idx[n + 1] - gap_);
        return {a, b};
    }

    ZeroSequence sequence(const std::vector<long>& idx) const {
        std::vector<double> terms;
        for (std::size_t n = 1; n <= n_; ++n) terms.push_back(x(idx[n]));
        return ZeroSequence(std::move(terms), 1.0);
    }

private:
    double h_;
    std::size_t n_;
    long gap_ = 0;
    std::vector<long> lo_, hi_;
    std::vector<std::vector<double>> prefix_;
    std::vector<double> tail_;
};

struct Candidate {
    std::vector<long> idx;
    double value = -std::numeric_limits<double>::infinity();
    std::size_t evaluated = 0;
};

// Enumerates every feasible grid sequence whose first free index is i1, in lexicographic order.
Candidate enumerate_from(const GridObjective& g, long i1) {
    const std::size_t N = g.size();
    Candidate best;
    std::vector<long> idx(N + 1, 0);
    std::vector<double> partial(N + 1, 0.0);
    idx[1] = i1;
    partial[1] = g.stripe(0, 0, i1);
    auto recurse = [&](auto&& self, std::size_t n) -> void {
        if (n > N) {
            const double v = partial[N] + g.tail(idx[N]);
            ++best.evaluated;
            if (best.idx.empty() || v > best.value + improve_tol) {
                best.idx = idx;
                best.value = v;
            }
            return;
        }
        for (long i = std::max(g.lo(n), idx[n - 1] + g.gap()); i <= g.hi(n); ++i) {
            idx[n] = i;
            partial[n] = partial[n - 1] + g.stripe(n - 1, idx[n - 1], i);
            self(self, n + 1);
        }
    };
    if (N == 1) {
        best.idx = idx;
        best.value = partial[1] + g.tail(i1);
        best.evaluated = 1;
    } else {
        recurse(recurse, 2);
    }
    return best;
}

Candidate exhaustive(const GridObjective& g) {
    const long first = g.lo(1);
    const auto count = static_cast<std::size_t>(g.hi(1) - first + 1);
    std::vector<Candidate> parts(count);
    parallel_for(count, [&](std::size_t k) { parts[k] = enumerate_from(g, first + static_cast<long>(k)); });
    Candidate best;
    for (const auto& c : parts) {
        best.evaluated += c.evaluated;
        // parts are in lexicographic order, so only a strict gain replaces the incumbent
        if (best.idx.empty() || c.value > best.value + improve_tol) {
            best.idx = c.idx;
            best.value = c.value;
        }
    }
    return best;
}

// Uniform feasible start: each coordinate drawn from the range that still leaves room for the rest.
std::vector<long> random_start(const GridObjective& g, Rng& rng) {
    const std::size_t N = g.size();
    std::vector<long> idx(N + 1, 0);
    for (std::size_t n = 1; n <= N; ++n) {
        const long a = n == 1 ? g.lo(1) : std::max(g.lo(n), idx[n - 1] + g.gap());
        idx[n] = rng.integer(a, g.hi(n));
    }
    return idx;
}

Candidate ascend(const GridObjective& g, std::vector<long> idx) {
    Candidate out;
    constexpr int max_sweeps = 10000;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool improved = false;
        for (std::size_t n = 1; n <= g.size(); ++n) {
            const auto [a, b] = g.range(idx, n);
            const double current = g.local(idx, n, idx[n]);
            std::vector<double> values;
            double top = current;
            for (long i = a; i <= b; ++i) {
                values.push_back(g.local(idx, n, i));
                top = std::max(top, values.back());
            }
            out.evaluated += values.size();
            // smallest index reaching the maximum, so ties settle toward the lexicographic minimum
            long arg = idx[n];
            for (long i = a; i <= b; ++i)
                if (values[static_cast<std::size_t>(i - a)] >= top - improve_tol) {
                    arg = i;
                    break;
                }
            if (top > current + improve_tol) improved = true;
            idx[n] = arg;
        }
        if (!improved) break;
    }
    out.idx = idx;
    out.value = g.value(idx);
    return out;
}

Candidate ascent(const GridObjective& g, const OptimizerConfig& cfg) {
    const auto runs = static_cast<std::size_t>(std::max(cfg.restarts, 1));
    std::vector<Candidate> parts(runs);
    parallel_for(runs, [&](std::size_t r) {
        Rng rng(cfg.rng_seed, r);
        parts[r] = ascend(g, random_start(g, rng));
    });
    Candidate best;
    for (const auto& c : parts) {
        best.evaluated += c.evaluated;
        const bool tie = std::fabs(c.value - best.value) <= improve_tol;
        if (best.idx.empty() || c.value > best.value + improve_tol || (tie && c.idx < best.idx)) {
            best.idx = c.idx;
            best.value = c.value;
        }
    }
    return best;
}

}  // namespace

OptimizeResult brute_force_sup(const Exponent& p, const SeparationParams& d, const OptimizerConfig& cfg,
                               const QuadSettings& s) {
    d.validate();
    s.validate();
    if (!(cfg.grid_step > 0.0)) throw DomainError("brute_force_sup: grid_step must be positive");
    if (cfg.n_explicit < 2) throw DomainError("brute_force_sup: n_explicit must be at least 2");
    if (cfg.upper_slack < 0.0) throw DomainError("brute_force_sup: upper_slack must be nonnegative");
    const GridObjective g(p, d, cfg, s);
    const Candidate best = cfg.mode == SearchMode::Exhaustive ? exhaustive(g) : ascent(g, cfg);
    OptimizeResult out;
    out.best = g.sequence(best.idx);
    out.value = ep(out.best, p, s);
    out.evaluated = best.evaluated;
    return out;
}

}  // namespace pwb
