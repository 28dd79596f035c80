#include "pwb/bounds.hpp"
#include "pwb/errors.hpp"
#include "pwb/objective.hpp"
#include "pwb/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace pwb;

namespace {

enum Exit { ok = 0, failed = 1, range = 2, parse = 3, infeasible = 4, convergence = 5 };

struct Failure {
    int code;
    std::string message;
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string pair(const Bracket& b) { return num(b.lo) + " " + num(b.hi); }

// rounded to the printed precision so JSON and text agree
double r12(double v) { return std::stod(num(v)); }

ordered_json pair_json(const Bracket& b) { return {{"lo", r12(b.lo)}, {"hi", r12(b.hi)}}; }

// temp file + rename, so readers never see a half-written file
void write_atomic(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << text;
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty())
        std::cout << text;
    else
        write_atomic(out, text);
}

std::string dump(const ordered_json& j) {
    return j.dump(2) + "\n";
}

const std::map<std::string, Method> methods{
    {"corollary", Method::CorollaryLow},         {"corollary-low", Method::CorollaryLow},
    {"corollary-high", Method::CorollaryHigh},   {"brevig", Method::Brevig},
    {"half-p", Method::HalfP},                   {"power-trick-ceil", Method::PowerTrickCeil},
};

struct BoundArgs {
    double p = 0.0;
    std::string method = "corollary";
    std::string format = "text";
};

int cmd_bound(const BoundArgs& a) {
    const Method m = methods.at(a.method);
    BoundResult r;
    if (a.method == "corollary")
        r = cp_upper(a.p);
    else if (m == Method::CorollaryLow || m == Method::CorollaryHigh)
        r = cp_upper_via(a.p, m);
    else
        r = cp_reference(a.p, m);
    if (a.format == "json") {
        ordered_json j{{"p", r12(r.p)},
                       {"method", to_string(r.method)},
                       {"value", pair_json(r.value)},
                       {"ratio_to_p", pair_json(r.ratio_to_p)},
                       {"hypotheses", r.hypotheses}};
        std::cout << dump(j);
    } else {
        std::cout << "p " << num(r.p) << "\nmethod " << to_string(r.method) << "\nvalue " << pair(r.value)
                  << "\nratio_to_p " << pair(r.ratio_to_p) << "\nhypotheses " << r.hypotheses << "\n";
    }
    return ok;
}

struct EpArgs {
    std::string file;
    std::optional<double> p;
    std::optional<double> delta1, delta2;
    bool no_validate = false;
    long breakdown = -1;
    std::string format = "text";
};

int cmd_ep(const EpArgs& a) {
    std::ifstream in(a.file, std::ios::binary);
    if (!in) throw Failure{parse, "cannot read " + a.file};
    std::stringstream text;
    text << in.rdbuf();
    const SequenceFile f = parse_sequence_json(text.str());

    const std::optional<double> pv = a.p ? a.p : f.p;
    if (!pv) throw Failure{parse, "p missing: pass --p or put it in the sequence file"};
    const Exponent p(*pv);

    SeparationParams d = f.separation.value_or(corollary_separation(p.low() ? Regime::Low : Regime::High));
    if (a.delta1) d.delta1 = *a.delta1;
    if (a.delta2) d.delta2 = *a.delta2;
    if (!a.no_validate) {
        d.validate();
        const MembershipReport m = validate_membership(f.tau, d);
        if (!m.ok())
            throw Failure{infeasible, "sequence not in T(" + num(d.delta1) + ", " + num(d.delta2) + "): index " +
                                          std::to_string(m.violation->index) + ": " + m.violation->clause};
    }

    const Bracket v = ep(f.tau, p);
    std::vector<Estimate> levels;
    for (long n = 0; n <= a.breakdown; ++n) levels.push_back(ep_level(f.tau, static_cast<std::size_t>(n), p));

    if (a.format == "json") {
        ordered_json j{{"p", r12(p.value())}, {"ep", pair_json(v)}};
        if (!levels.empty()) {
            ordered_json arr = ordered_json::array();
            for (std::size_t n = 0; n < levels.size(); ++n)
                arr.push_back({{"level", n}, {"value", pair_json(levels[n].bracket())}});
            j["levels"] = arr;
        }
        std::cout << dump(j);
    } else {
        std::cout << "p " << num(p.value()) << "\nep " << pair(v) << "\n";
        for (std::size_t n = 0; n < levels.size(); ++n)
            std::cout << "level " << n << " " << pair(levels[n].bracket()) << "\n";
    }
    return ok;
}

struct FigureArgs {
    double pmin = 2.0, pmax = 5.0, step = 0.01;
    std::string out;
};

int cmd_figure1(const FigureArgs& a) {
    emit(a.out, figure1_csv(figure1_table(a.pmin, a.pmax, a.step)));
    return ok;
}

struct OptimizeArgs {
    double p = 0.0;
    int n = 5;
    double grid = 0.01;
    int restarts = 8;
    std::uint64_t seed = 1;
    std::string mode = "ascent";
    std::optional<double> delta1, delta2;
    std::string format = "text";
    std::string out;
};

int cmd_optimize(const OptimizeArgs& a) {
    const Exponent p(a.p);
    const Regime regime = p.low() ? Regime::Low : Regime::High;
    SeparationParams d = corollary_separation(regime);
    if (a.delta1) d.delta1 = *a.delta1;
    if (a.delta2) d.delta2 = *a.delta2;

    OptimizerConfig cfg;
    cfg.n_explicit = a.n;
    cfg.grid_step = a.grid;
    cfg.restarts = a.restarts;
    cfg.rng_seed = a.seed;
    cfg.mode = a.mode == "exhaustive" ? SearchMode::Exhaustive : SearchMode::Ascent;
    const OptimizeResult r = brute_force_sup(p, d, cfg);

    std::optional<Bracket> closed;
    try {
        closed = regime == Regime::Low ? sup_value_low(p, d) : sup_value_high(p, d);
    } catch (const RangeError&) {
        // δ outside the proven ranges: no closed form to compare against
    }

    std::vector<double> best;
    for (double t : r.best.explicit_terms()) best.push_back(r12(t));
    ordered_json j{{"p", r12(p.value())},
                   {"delta1", r12(d.delta1)},
                   {"delta2", r12(d.delta2)},
                   {"mode", a.mode},
                   {"best", best},
                   {"tail_step", r.best.tail_step()},
                   {"value", pair_json(r.value)},
                   {"evaluated", r.evaluated}};
    if (closed) {
        j["closed_form"] = pair_json(*closed);
        j["gap"] = r12(closed->mid() - r.value.mid());
    }
    std::string text;
    if (a.format == "json") {
        text = dump(j);
    } else {
        std::ostringstream s;
        s << "p " << num(p.value()) << "\ndelta " << num(d.delta1) << " " << num(d.delta2) << "\nbest";
        for (double t : r.best.explicit_terms()) s << " " << num(t);
        s << "\nvalue " << pair(r.value) << "\nevaluated " << r.evaluated << "\n";
        if (closed) s << "closed_form " << pair(*closed) << "\ngap " << num(closed->mid() - r.value.mid()) << "\n";
        text = s.str();
    }
    emit(a.out, text);
    return ok;
}

struct VerifyArgs {
    std::string suite = "all";
    std::uint64_t seed = 7;
    std::size_t samples = 0;
    std::vector<std::string> only;
    std::string out_dir = "reports";
    double xi_max = 50.0;
    int refine = 200;
};

int cmd_verify(const VerifyArgs& a) {
    std::vector<LemmaCheckReport> reports;
    const auto wanted = [&](const std::string& id) {
        return a.only.empty() || std::find(a.only.begin(), a.only.end(), id) != a.only.end();
    };
    if (a.suite == "lemmas" || a.suite == "all")
        for (const auto& id : lemma_ids())
            if (wanted(id)) reports.push_back(check_lemma(id, a.samples, a.seed));
    if (a.suite == "appendix" || a.suite == "all") {
        SweepSpec spec;
        spec.xi_max = a.xi_max;
        spec.refine = a.refine;
        for (const auto& id : appendix_cases())
            if (wanted(id)) reports.push_back(sweep_appendix(id, spec, a.seed));
    }
    if (reports.empty()) throw Failure{range, "no check matches the selection"};

    std::optional<fs::path> first_failure;
    ordered_json summary = ordered_json::array();
    for (const auto& r : reports) {
        const fs::path path = fs::path(a.out_dir) / (r.lemma_id + ".json");
        write_atomic(path, to_json(r) + "\n");
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.lemma_id << " min_margin " << num(r.min_margin) << "\n";
        summary.push_back({{"lemma_id", r.lemma_id}, {"passed", r.passed}, {"report", path.string()}});
        if (!r.passed && !first_failure) first_failure = path;
    }
    write_atomic(fs::path(a.out_dir) / "summary.json", dump(summary));
    if (first_failure) {
        std::cerr << "first failing report: " << first_failure->string() << "\n";
        return failed;
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Upper bounds for the point-evaluation constant C_p of Paley-Wiener spaces, 2 <= p <= 5"};
    app.require_subcommand(1);

    BoundArgs ba;
    auto* bound = app.add_subcommand(
        "bound", "Upper bound for C_p. 'corollary' is 2 sup E_p(tau) over the separated zero sequences: "
                 "the sharp low-regime value for 2 <= p <= 4 and the sharp high-regime value for 4 <= p <= 5. "
                 "Also Brevig's bound B(p), p/2 and ceil(p/2) for comparison.");
    bound->add_option("--p", ba.p, "exponent")->required();
    bound->add_option("--method", ba.method, "corollary | corollary-low | corollary-high | brevig | half-p | "
                                             "power-trick-ceil")
        ->check(CLI::IsMember({"corollary", "corollary-low", "corollary-high", "brevig", "half-p",
                               "power-trick-ceil"}));
    bound->add_option("--format", ba.format)->check(CLI::IsMember({"text", "json"}));

    EpArgs ea;
    auto* epc = app.add_subcommand(
        "ep", "Evaluate E_p(tau), the integral of the squared positive part of the kernel built from the zero "
              "sequence in a JSON file {p, delta1, delta2, explicit, tail_step, tail_start}.");
    epc->add_option("file", ea.file, "sequence file")->required();
    epc->add_option("--p", ea.p, "exponent (overrides the file)");
    epc->add_option("--delta1", ea.delta1, "first-gap lower bound (overrides the file)");
    epc->add_option("--delta2", ea.delta2, "gap lower bound (overrides the file)");
    epc->add_flag("--no-validate", ea.no_validate, "skip the feasibility check");
    epc->add_option("--breakdown", ea.breakdown, "also print the contribution of levels 0..N");
    epc->add_option("--format", ea.format)->check(CLI::IsMember({"text", "json"}));

    FigureArgs fa;
    auto* fig = app.add_subcommand(
        "figure1", "Table of the new upper bound for C_p/p against Brevig's bound (power trick above p = 4) "
                   "as CSV: p,new_over_p_lo,new_over_p_hi,brevig_over_p.");
    fig->add_option("--pmin", fa.pmin);
    fig->add_option("--pmax", fa.pmax);
    fig->add_option("--step", fa.step);
    fig->add_option("--out", fa.out, "output file (stdout when omitted)");

    OptimizeArgs oa;
    auto* opt = app.add_subcommand(
        "optimize", "Grid search for sup E_p(tau) over separated sequences with N free terms and a unit tail, "
                    "compared with the closed-form supremum and its maximizers.");
    opt->add_option("--p", oa.p)->required();
    opt->add_option("--n", oa.n, "free terms");
    opt->add_option("--grid", oa.grid, "grid step");
    opt->add_option("--restarts", oa.restarts, "ascent restarts");
    opt->add_option("--seed", oa.seed);
    opt->add_option("--mode", oa.mode)->check(CLI::IsMember({"ascent", "exhaustive"}));
    opt->add_option("--delta1", oa.delta1);
    opt->add_option("--delta2", oa.delta2);
    opt->add_option("--format", oa.format)->check(CLI::IsMember({"text", "json"}));
    opt->add_option("--out", oa.out, "output file (stdout when omitted)");

    VerifyArgs va;
    auto* ver = app.add_subcommand(
        "verify", "Numerical checks of the reduction lemmas (sampled comparison claims) and sign sweeps of the "
                  "auxiliary inequalities; one JSON report per check, exit 0 iff all pass.");
    ver->add_option("--suite", va.suite)->check(CLI::IsMember({"lemmas", "appendix", "all"}));
    ver->add_option("--seed", va.seed);
    ver->add_option("--samples", va.samples, "samples per lemma (0: registry default)");
    ver->add_option("--only", va.only, "restrict to these check ids");
    ver->add_option("--out-dir", va.out_dir, "report directory");
    ver->add_option("--xi-max", va.xi_max, "grid cap for xi in the sweeps");
    ver->add_option("--refine", va.refine, "random refinement points per sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return parse;
    }

    try {
        if (*bound) return cmd_bound(ba);
        if (*epc) return cmd_ep(ea);
        if (*fig) return cmd_figure1(fa);
        if (*opt) return cmd_optimize(oa);
        if (*ver) return cmd_verify(va);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return range;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return range;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return parse;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (best " << num(e.best_estimate()) << ", error "
                  << num(e.error_estimate()) << ")\n";
        return convergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failed;
    }
    return ok;
}
