#pragma once

// Convergence studies: estimate f′ for a sequence of noise levels, compare the
// measured sup error with the guaranteed bound, and fit the log-log rate.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "stablederiv/corpus.hpp"
#include "stablederiv/errors.hpp"
#include "stablederiv/estimator.hpp"
#include "stablederiv/format.hpp"
#include "stablederiv/function_model.hpp"

namespace stablederiv {

enum class NoiseKind { None, Hash, Cosine, Constant };

inline NoiseKind parse_noise_kind(std::string_view name) {
    if (name == "none") return NoiseKind::None;
    if (name == "hash" || name == "uniform-hash") return NoiseKind::Hash;
    if (name == "cosine" || name == "cosine-adversarial") return NoiseKind::Cosine;
    if (name == "constant" || name == "constant-sign") return NoiseKind::Constant;
    throw ConfigurationError("unknown noise model '" + std::string(name) + "' (none, hash, cosine, constant)");
}

/// Concrete noise for one run. Cosine noise is tuned to the step actually used.
inline NoiseModel make_noise(NoiseKind kind, std::uint64_t seed, double h_used) {
    switch (kind) {
    case NoiseKind::None: return noise::None{};
    case NoiseKind::Hash: return noise::UniformHash{seed};
    case NoiseKind::Cosine: return noise::CosineAdversarial{h_used};
    case NoiseKind::Constant: return noise::ConstantSign{+1};
    }
    return noise::None{};
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

/// Value of `key=<number>` inside a comma separated list.
inline std::optional<double> keyed_value(std::string_view list, std::string_view key) {
    for (auto item : split(list, ',')) {
        const auto eq = item.find('=');
        if (eq != std::string_view::npos && item.substr(0, eq) == key) return parse_double(item.substr(eq + 1), key);
    }
    return std::nullopt;
}

} // namespace detail

/// Parses `c2:m2=<v>`, `holder:a=<a>,m=<v>`, `m0:m0=<v>` or `m1:m1=<v>`.
inline SmoothnessSpec parse_spec(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ConfigurationError("smoothness spec needs the form kind:key=value");
    const auto kind = text.substr(0, colon);
    const auto rest = text.substr(colon + 1);
    auto need = [&](std::string_view key) {
        const auto v = detail::keyed_value(rest, key);
        if (!v) throw ConfigurationError("smoothness spec '" + std::string(text) + "' lacks " + std::string(key) + "=");
        return *v;
    };
    try {
        if (kind == "c2") return SmoothnessSpec::c2(need("m2"));
        if (kind == "holder") return SmoothnessSpec::holder(need("a"), need("m"));
        if (kind == "m0") return SmoothnessSpec::m0(need("m0"));
        if (kind == "m1") return SmoothnessSpec::m1(need("m1"));
    } catch (const ParameterError& e) {
        throw ConfigurationError(e.what());
    }
    throw ConfigurationError("unknown smoothness kind '" + std::string(kind) + "' (c2, holder, m0, m1)");
}

/// `start:stop:count` → count log-spaced values from start to stop inclusive.
inline std::vector<double> parse_deltas(std::string_view text) {
    const auto parts = detail::split(text, ':');
    if (parts.size() != 3) throw ConfigurationError("delta sequence must read start:stop:count");
    const double start = parse_double(parts[0], "delta start");
    const double stop = parse_double(parts[1], "delta stop");
    const double count_d = parse_double(parts[2], "delta count");
    if (!(start > 0.0) || !(stop > 0.0)) throw ConfigurationError("delta endpoints must be positive");
    if (count_d < 2.0 || count_d != std::floor(count_d)) throw ConfigurationError("delta count must be an integer >= 2");
    const auto count = static_cast<std::size_t>(count_d);
    const double l0 = std::log10(start);
    const double l1 = std::log10(stop);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        out[i] = std::pow(10.0, l0 + t * (l1 - l0));
    }
    out.front() = start;
    out.back() = stop;
    return out;
}

/// `lo:hi` window.
inline Window parse_window(std::string_view text) {
    const auto parts = detail::split(text, ':');
    if (parts.size() != 2) throw ConfigurationError("window must read lo:hi");
    const Window w{parse_double(parts[0], "window lo"), parse_double(parts[1], "window hi")};
    if (!(w.lo < w.hi)) throw ConfigurationError("window must satisfy lo < hi");
    return w;
}

inline constexpr Window default_study_window{-3.0, 3.0};
inline constexpr const char* probe_window_env = "STABLEDERIV_PROBE_WINDOW";

/// Default study window, overridden by STABLEDERIV_PROBE_WINDOW=lo:hi when set.
inline Window study_window_from_env() {
    const char* env = std::getenv(probe_window_env);
    if (env == nullptr || *env == '\0') return default_study_window;
    return parse_window(env);
}

struct StudyConfig {
    std::string function_name = "sin";
    SmoothnessSpec spec = SmoothnessSpec::c2(1.0);
    std::vector<double> deltas;
    NoiseKind noise = NoiseKind::Cosine;
    std::uint64_t seed = 0;
    Window window = default_study_window;
    std::size_t points = 2001;
    /// Grid resolution of the brute-force seminorm check run before the study.
    std::size_t validation_points = 601;
};

struct StudyRow {
    double delta = 0.0;
    double h_used = 0.0;
    double theory_bound = 0.0;
    double measured_sup_error = 0.0;
    std::size_t n_points = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] bool within_bound() const { return measured_sup_error <= theory_bound; }
};

struct StudyResult {
    std::vector<StudyRow> rows;
    /// Absent when fewer than two rows have a positive measured error.
    std::optional<double> slope;

    [[nodiscard]] bool all_within_bound() const {
        return std::all_of(rows.begin(), rows.end(), [](const StudyRow& r) { return r.within_bound(); });
    }
};

/// Ordinary least-squares slope of log(measured error) against log(δ), over rows with positive error.
inline double fit_slope(const std::vector<StudyRow>& rows) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& r : rows) {
        if (r.measured_sup_error > 0.0 && r.delta > 0.0) {
            xs.push_back(std::log(r.delta));
            ys.push_back(std::log(r.measured_sup_error));
        }
    }
    if (xs.size() < 2) throw InsufficientDataError("slope fit needs at least 2 rows with positive measured error");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw InsufficientDataError("slope fit needs at least two distinct deltas");
    return sxy / sxx;
}

inline void validate_config(const StudyConfig& c) {
    if (c.deltas.size() < 4) throw ConfigurationError("a study needs at least 4 deltas");
    for (std::size_t i = 0; i < c.deltas.size(); ++i) {
        if (!(c.deltas[i] > 0.0)) throw ConfigurationError("deltas must be positive");
        if (i > 0 && !(c.deltas[i] < c.deltas[i - 1])) throw ConfigurationError("deltas must be strictly decreasing");
    }
    if (!(c.window.lo < c.window.hi)) throw ConfigurationError("probe window must satisfy lo < hi");
    if (c.points < 1) throw ConfigurationError("probe window needs at least one point");
    using K = SmoothnessSpec::Kind;
    if (c.spec.kind() == K::M0 || c.spec.kind() == K::M1) {
        throw ConfigurationError(std::string("smoothness kind ") + to_string(c.spec.kind()) +
                                 " admits no stable estimator; use c2 or holder");
    }
}

/// Checks the declared bound against the brute-force seminorm of f′ (exponent 1
/// for C², i.e. the Lipschitz constant m₂) over `window`.
inline void validate_spec(const FunctionOracle& f, const SmoothnessSpec& spec, Window window, std::size_t grid_points) {
    const double a = spec.kind() == SmoothnessSpec::Kind::C2 ? 1.0 : spec.exponent().value_or(1.0);
    const double measured = estimate_holder_seminorm(f.derivative_oracle(), a, window, grid_points);
    if (measured > spec.bound() * (1.0 + 1e-9) + 1e-12) {
        throw ConfigurationError("declared " + std::string(to_string(spec.kind())) + " bound " +
                                 format_double(spec.bound()) + " is below the measured value " + format_double(measured) +
                                 " for '" + f.name() + "'");
    }
}

inline StudyRow run_study_row(const FunctionOracle& f, const StudyConfig& c, double delta,
                              const std::vector<double>& points) {
    const double h = StepRule::resolve(c.spec, delta).resolved_h();
    const NoisyOracle data(f, delta, make_noise(c.noise, c.seed, h));
    const EstimateReport r = estimate(data, c.spec, points);
    StudyRow row;
    row.delta = delta;
    row.h_used = r.h_used;
    row.theory_bound = r.guaranteed_bound;
    row.measured_sup_error = r.measured_sup_error.value_or(0.0);
    row.n_points = r.points.size();
    row.seed = c.seed;
    return row;
}

/// One row per δ, computed concurrently and reported in the configured δ order.
inline StudyResult run_study(const StudyConfig& c) {
    validate_config(c);
    const CorpusEntry entry = corpus_function(c.function_name);
    if (!entry.oracle.has_derivative()) throw ConfigurationError("study function needs an exact derivative");

    // The stencil reaches h beyond the window; the largest δ has the largest h.
    const double h_max = StepRule::resolve(c.spec, c.deltas.front()).resolved_h();
    validate_spec(entry.oracle, c.spec, {c.window.lo - h_max, c.window.hi + h_max}, c.validation_points);

    const std::vector<double> points = probe_grid(c.window, c.points);
    std::vector<std::future<StudyRow>> jobs;
    jobs.reserve(c.deltas.size());
    for (double delta : c.deltas) {
        jobs.push_back(std::async(std::launch::async, [&entry, &c, &points, delta] {
            return run_study_row(entry.oracle, c, delta, points);
        }));
    }
    StudyResult result;
    for (auto& j : jobs) result.rows.push_back(j.get());
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const StudyRow& a, const StudyRow& b) { return a.delta > b.delta; });
    try {
        result.slope = fit_slope(result.rows);
    } catch (const InsufficientDataError&) {
        result.slope.reset();
    }
    return result;
}

namespace csv {

inline void write_study(std::ostream& out, const StudyResult& s) {
    out << "delta,h_used,theory_bound,measured_sup_error,n_points,seed\n";
    for (const auto& r : s.rows) {
        out << format_double(r.delta) << ',' << format_double(r.h_used) << ',' << format_double(r.theory_bound) << ','
            << format_double(r.measured_sup_error) << ',' << r.n_points << ',' << r.seed << '\n';
    }
    out << "# slope," << (s.slope ? format_double(*s.slope) : std::string("nan")) << '\n';
}

} // namespace csv

} // namespace stablederiv
