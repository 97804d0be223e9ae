#pragma once

// Built-in test functions addressable by name, each with exactly known norms.
//
//   sin           f = sin x                     m0 = 1, m2 = 1 on ℝ
//   quadratic     f = x²                         m0 = 1, m2 = 2 on [0, 1]
//   exp-decay     f = exp(-x²)                   m0 = 1, m2 = 2 on ℝ
//   holder:a=<a>  f = sign(x)|x|^{1+a}/(1+a)     f′ = |x|^a, Hölder-a seminorm 1

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "stablederiv/errors.hpp"
#include "stablederiv/format.hpp"
#include "stablederiv/function_model.hpp"
#include "stablederiv/inequalities.hpp"

namespace stablederiv {

struct CorpusEntry {
    FunctionOracle oracle;
    /// Smoothness information that is exactly true for the function on ℝ.
    SmoothnessSpec natural_spec;
    /// Domain and window on which `m0` and `m2` are the exact sup norms.
    DomainSpec norm_domain;
    Window norm_window;
    double m0;
    double m2;
};

inline CorpusEntry holder_corpus_function(double a) {
    if (!(a > 0.0 && a <= 1.0)) throw ConfigurationError("holder corpus exponent must lie in (0, 1]");
    FunctionOracle f(
        "holder:a=" + format_double(a),
        [a](double x) { return std::copysign(std::pow(std::abs(x), 1.0 + a) / (1.0 + a), x); },
        [a](double x) { return std::pow(std::abs(x), a); });
    // f″ = a·x^{a-1} on (0, 1] is unbounded unless a = 1.
    const double m2 = a == 1.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return {std::move(f), SmoothnessSpec::holder(a, 1.0), DomainSpec::interval(1.0), {0.0, 1.0}, 1.0 / (1.0 + a), m2};
}

/// Looks up a corpus function by name. Throws ConfigurationError for unknown names.
inline CorpusEntry corpus_function(std::string_view name) {
    if (name == "sin") {
        return {FunctionOracle("sin", [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }),
                SmoothnessSpec::c2(1.0), DomainSpec::whole_line(), default_probe_window, 1.0, 1.0};
    }
    if (name == "quadratic") {
        return {FunctionOracle("quadratic", [](double x) { return x * x; }, [](double x) { return 2.0 * x; }),
                SmoothnessSpec::c2(2.0), DomainSpec::interval(1.0), {0.0, 1.0}, 1.0, 2.0};
    }
    if (name == "exp-decay") {
        return {FunctionOracle(
                    "exp-decay", [](double x) { return std::exp(-x * x); },
                    [](double x) { return -2.0 * x * std::exp(-x * x); }),
                SmoothnessSpec::c2(2.0), DomainSpec::whole_line(), default_probe_window, 1.0, 2.0};
    }
    constexpr std::string_view prefix = "holder:a=";
    if (name.substr(0, prefix.size()) == prefix) {
        return holder_corpus_function(parse_double(name.substr(prefix.size()), "Hoelder exponent"));
    }
    throw ConfigurationError("unknown corpus function '" + std::string(name) +
                             "' (known: sin, quadratic, exp-decay, holder:a=<a>)");
}

inline std::vector<std::string> corpus_names() {
    return {"sin", "quadratic", "exp-decay", "holder:a=0.25", "holder:a=0.5", "holder:a=0.75", "holder:a=1"};
}

} // namespace stablederiv
