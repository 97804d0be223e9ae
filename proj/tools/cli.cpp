#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "stablederiv/stablederiv.hpp"

namespace stablederiv::cli {
namespace {

/// Writes `body` to `path`, or to `out` when no path was given.
void emit(const std::string& body, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << body;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigurationError("cannot open output file '" + path + "'");
    f << body;
    if (!f) throw ConfigurationError("failed writing '" + path + "'");
}

Window resolve_window(const std::string& flag) { return flag.empty() ? study_window_from_env() : parse_window(flag); }

std::vector<EstimatorHandle> parse_estimators(std::string_view name, double delta, double M) {
    if (name == "all") {
        auto zoo = estimator_zoo();
        zoo.push_back(central_difference_estimator(optimal_step_c2(delta, M)));
        return zoo;
    }
    if (name == "zero") return {zero_estimator()};
    if (name == "optimal") return {central_difference_estimator(optimal_step_c2(delta, M))};
    const auto colon = name.find(':');
    if (colon != std::string_view::npos) {
        const auto kind = name.substr(0, colon);
        const auto rest = name.substr(colon + 1);
        if (rest.substr(0, 2) == "h=") {
            const double h = parse_double(rest.substr(2), "estimator step");
            if (!(h > 0.0)) throw ConfigurationError("estimator step must be positive");
            if (kind == "cd" || kind == "central") return {central_difference_estimator(h)};
            if (kind == "smoothed") return {smoothed_difference_estimator(h)};
        }
    }
    throw ConfigurationError("unknown estimator '" + std::string(name) +
                             "' (zero, optimal, cd:h=<h>, smoothed:h=<h>, all)");
}

struct EstimateArgs {
    std::string fn;
    std::string spec = "c2:m2=1";
    double delta = 0.0;
    std::string noise = "none";
    std::uint64_t seed = 0;
    std::string window;
    std::size_t n = 2001;
    std::string in;
    std::string out;
};

int run_estimate(const EstimateArgs& a, std::ostream& out, std::ostream& err) {
    const SmoothnessSpec spec = parse_spec(a.spec);
    EstimateReport report;
    if (!a.in.empty()) {
        const GridSignal signal = csv::read_grid_file(a.in, a.delta);
        std::function<double(double)> truth;
        std::optional<CorpusEntry> entry;
        if (!a.fn.empty()) {
            entry = corpus_function(a.fn);
            truth = [&entry](double x) { return entry->oracle.derivative(x); };
        }
        report = estimate_on_grid(signal, spec, truth);
    } else {
        if (a.fn.empty()) throw ConfigurationError("estimate needs --fn or --in");
        const CorpusEntry entry = corpus_function(a.fn);
        const double h = StepRule::resolve(spec, a.delta).resolved_h();
        const NoisyOracle data(entry.oracle, a.delta, make_noise(parse_noise_kind(a.noise), a.seed, h));
        report = estimate(data, spec, probe_grid(resolve_window(a.window), a.n));
    }

    std::ostringstream body;
    csv::write_report(body, report);
    emit(body.str(), a.out, out);
    if (!a.out.empty()) {
        out << "h=" << format_double(report.h_used) << " bound=" << format_double(report.guaranteed_bound)
            << " points=" << report.points.size() << " dropped=" << report.dropped;
        if (report.measured_sup_error) out << " measured=" << format_double(*report.measured_sup_error);
        out << '\n';
    }
    if (!report.within_guarantee()) {
        err << "guarantee violated: measured sup error " << format_double(*report.measured_sup_error)
            << " exceeds bound " << format_double(report.guaranteed_bound) << '\n';
        return kGuaranteeViolation;
    }
    return kOk;
}

struct StudyArgs {
    std::string fn = "sin";
    std::string spec = "c2:m2=1";
    std::string deltas = "1e-2:1e-7:6";
    std::string noise = "cosine";
    std::uint64_t seed = 0;
    std::string window;
    std::size_t n = 2001;
    std::string out;
};

int run_study_cmd(const StudyArgs& a, std::ostream& out, std::ostream& err) {
    StudyConfig c;
    c.function_name = a.fn;
    c.spec = parse_spec(a.spec);
    c.deltas = parse_deltas(a.deltas);
    c.noise = parse_noise_kind(a.noise);
    c.seed = a.seed;
    c.window = resolve_window(a.window);
    c.points = a.n;
    const StudyResult result = run_study(c);

    std::ostringstream body;
    csv::write_study(body, result);
    emit(body.str(), a.out, out);
    if (!a.out.empty()) {
        out << "rows=" << result.rows.size()
            << " slope=" << (result.slope ? format_double(*result.slope) : std::string("nan")) << '\n';
    }
    if (!result.all_within_bound()) {
        for (const auto& r : result.rows) {
            if (!r.within_bound()) {
                err << "guarantee violated at delta=" << format_double(r.delta) << ": measured "
                    << format_double(r.measured_sup_error) << " > bound " << format_double(r.theory_bound) << '\n';
            }
        }
        return kGuaranteeViolation;
    }
    return kOk;
}

struct AdversaryArgs {
    double delta = 0.0;
    double M = 0.0;
    std::string estimator = "all";
    std::string out;
};

int run_adversary(const AdversaryArgs& a, std::ostream& out, std::ostream& err) {
    std::ostringstream body;
    csv::write_challenge_header(body);
    bool beaten = false;
    for (const auto& est : parse_estimators(a.estimator, a.delta, a.M)) {
        const ChallengeRecord rec = challenge(est, a.delta, a.M);
        csv::write_challenge_row(body, rec);
        if (!a.out.empty()) {
            out << rec.estimator << ": b=" << format_double(rec.b) << " worst=" << format_double(rec.worst)
                << " lower=" << format_double(rec.lower) << " beaten=" << (rec.beaten ? "true" : "false") << '\n';
        }
        beaten = beaten || rec.beaten;
    }
    emit(body.str(), a.out, out);
    if (beaten) {
        err << "an estimator beat the adversarial lower bound; this indicates a bug\n";
        return kGuaranteeViolation;
    }
    return kOk;
}

struct BoundArgs {
    double m0 = 0.0;
    double m2 = 0.0;
    std::string domain = "real";
    double L = 0.0;
};

int run_bound(const BoundArgs& a, std::ostream& out) {
    DomainSpec d = DomainSpec::whole_line();
    if (a.domain == "real" || a.domain == "whole-line") {
        d = DomainSpec::whole_line();
    } else if (a.domain == "half" || a.domain == "half-line") {
        d = DomainSpec::half_line();
    } else if (a.domain == "interval") {
        d = DomainSpec::interval(a.L);
    } else {
        throw ConfigurationError("unknown domain '" + a.domain + "' (real, half, interval)");
    }
    const InequalityResult r = m1_bound(a.m0, a.m2, d);
    out << "m1_bound,rule,threshold_length\n"
        << format_double(r.bound_m1) << ',' << rule_label(r.rule_applied) << ',' << format_double(r.threshold_length)
        << '\n';
    return kOk;
}

struct SampleArgs {
    std::string fn = "sin";
    double delta = 0.0;
    std::string noise = "hash";
    std::uint64_t seed = 0;
    double x0 = 0.0;
    double spacing = 0.01;
    std::size_t n = 101;
    double h_ref = 0.1;
    std::string out;
};

int run_sample(const SampleArgs& a, std::ostream& out) {
    const CorpusEntry entry = corpus_function(a.fn);
    if (!(a.spacing > 0.0)) throw ConfigurationError("--spacing must be positive");
    const NoisyOracle data(entry.oracle, a.delta, make_noise(parse_noise_kind(a.noise), a.seed, a.h_ref));
    std::ostringstream body;
    csv::write_grid(body, GridSignal::sample(data, a.x0, a.spacing, a.n));
    emit(body.str(), a.out, out);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stable numerical differentiation of noisy functions", "stablederiv"};
    app.require_subcommand(1);

    EstimateArgs ea;
    auto* est = app.add_subcommand("estimate", "Estimate f' with the optimal step and report its guaranteed error");
    est->add_option("--fn", ea.fn, "Corpus function: sin, quadratic, exp-decay, holder:a=<a>");
    est->add_option("--spec", ea.spec, "Smoothness: c2:m2=<v> or holder:a=<a>,m=<v>")->capture_default_str();
    est->add_option("--delta", ea.delta, "Noise amplitude delta")->required();
    est->add_option("--noise", ea.noise, "none, hash, cosine or constant")->capture_default_str();
    est->add_option("--seed", ea.seed, "Seed for hash noise")->capture_default_str();
    est->add_option("--window", ea.window, "Evaluation window lo:hi (default -3:3 or $STABLEDERIV_PROBE_WINDOW)");
    est->add_option("--n", ea.n, "Evaluation points in the window")->capture_default_str()->check(CLI::PositiveNumber);
    est->add_option("--in", ea.in, "Read a uniform grid signal (CSV x,value) instead of sampling --fn");
    est->add_option("--out", ea.out, "Write CSV here instead of stdout");

    StudyArgs sa;
    auto* study = app.add_subcommand("study", "Convergence study over a log-spaced delta sequence");
    study->add_option("--fn", sa.fn, "Corpus function")->capture_default_str();
    study->add_option("--spec", sa.spec, "Smoothness: c2:m2=<v> or holder:a=<a>,m=<v>")->capture_default_str();
    study->add_option("--deltas", sa.deltas, "start:stop:count, log-spaced")->capture_default_str();
    study->add_option("--noise", sa.noise, "none, hash, cosine or constant")->capture_default_str();
    study->add_option("--seed", sa.seed, "Seed for hash noise")->capture_default_str();
    study->add_option("--window", sa.window, "Probe window lo:hi (default -3:3 or $STABLEDERIV_PROBE_WINDOW)");
    study->add_option("--n", sa.n, "Probe points in the window")->capture_default_str()->check(CLI::PositiveNumber);
    study->add_option("--out", sa.out, "Write CSV here instead of stdout");

    AdversaryArgs aa;
    auto* adv = app.add_subcommand("adversary", "Challenge estimators with the two-function lower-bound pair");
    adv->add_option("--delta", aa.delta, "Noise amplitude delta")->required();
    adv->add_option("--M", aa.M, "Curvature of the pair")->required();
    adv->add_option("--estimator", aa.estimator, "zero, optimal, cd:h=<h>, smoothed:h=<h> or all")->capture_default_str();
    adv->add_option("--out", aa.out, "Write CSV here instead of stdout");

    BoundArgs ba;
    auto* bnd = app.add_subcommand("bound", "Bound sup|f'| from sup|f| and sup|f''|");
    bnd->add_option("--m0", ba.m0, "sup |f|")->required();
    bnd->add_option("--m2", ba.m2, "sup |f''|")->required();
    bnd->add_option("--domain", ba.domain, "real, half or interval")->capture_default_str();
    bnd->add_option("--L", ba.L, "Interval length (domain interval)");

    SampleArgs pa;
    auto* smp = app.add_subcommand("sample", "Write noisy samples of a corpus function on a uniform grid");
    smp->add_option("--fn", pa.fn, "Corpus function")->capture_default_str();
    smp->add_option("--delta", pa.delta, "Noise amplitude delta")->required();
    smp->add_option("--noise", pa.noise, "none, hash, cosine or constant")->capture_default_str();
    smp->add_option("--seed", pa.seed, "Seed for hash noise")->capture_default_str();
    smp->add_option("--x0", pa.x0, "First abscissa")->capture_default_str();
    smp->add_option("--spacing", pa.spacing, "Grid spacing")->capture_default_str();
    smp->add_option("--n", pa.n, "Number of samples")->capture_default_str();
    smp->add_option("--h-ref", pa.h_ref, "Reference step for cosine noise")->capture_default_str();
    smp->add_option("--out", pa.out, "Write CSV here instead of stdout");

    // CLI11 consumes a reversed argument list without the program name.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (est->parsed()) return run_estimate(ea, out, err);
        if (study->parsed()) return run_study_cmd(sa, out, err);
        if (adv->parsed()) return run_adversary(aa, out, err);
        if (bnd->parsed()) return run_bound(ba, out);
        if (smp->parsed()) return run_sample(pa, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return kConfigError;
}

} // namespace stablederiv::cli
