#pragma once

// Central-difference differentiation of noisy data with step sizes chosen to
// minimise the worst-case sup-norm error, and the matching guaranteed bounds.
//
// For a step h the error splits into a noise part δ/h and a truncation part:
//   C²     : δ/h + m₂·h/2            minimised at h = √(2δ/m₂), value √(2m₂δ)
//   Hölder : δ/h + m_{1+a}·h^a        minimised at h = (δ/(a·m))^{1/(1+a)},
//                                      value c_a·δ^{a/(1+a)}

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stablederiv/errors.hpp"
#include "stablederiv/function_model.hpp"

namespace stablederiv {

namespace detail {

inline void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be a positive finite number");
}

inline void require_exponent(double a) {
    if (!(a > 0.0 && a <= 1.0)) throw ParameterError("Hoelder exponent a must lie in (0, 1]");
}

} // namespace detail

/// h(δ) = √(2δ/m₂).
inline double optimal_step_c2(double delta, double m2) {
    detail::require_positive(delta, "delta");
    detail::require_positive(m2, "m2");
    return std::sqrt(2.0 * delta / m2);
}

/// ε(δ) = √(2m₂δ).
inline double error_bound_c2(double delta, double m2) {
    detail::require_positive(delta, "delta");
    detail::require_positive(m2, "m2");
    return std::sqrt(2.0 * m2 * delta);
}

/// h_a(δ) = (δ / (a·m))^{1/(1+a)}.
inline double optimal_step_holder(double delta, double a, double m1a) {
    detail::require_positive(delta, "delta");
    detail::require_exponent(a);
    detail::require_positive(m1a, "m_{1+a}");
    return std::pow(delta / (a * m1a), 1.0 / (1.0 + a));
}

/// c_a = (a·m)^{1/(1+a)} + m / (a·m)^{a/(1+a)}.
inline double holder_constant(double a, double m1a) {
    detail::require_exponent(a);
    detail::require_positive(m1a, "m_{1+a}");
    const double am = a * m1a;
    return std::pow(am, 1.0 / (1.0 + a)) + m1a / std::pow(am, a / (1.0 + a));
}

/// ε_a(δ) = c_a·δ^{a/(1+a)}.
inline double error_bound_holder(double delta, double a, double m1a) {
    detail::require_positive(delta, "delta");
    return holder_constant(a, m1a) * std::pow(delta, a / (1.0 + a));
}

/// δ/h + m₂h/2: the C² error bound for an arbitrary step.
inline double error_bound_c2_at(double delta, double m2, double h) {
    detail::require_positive(h, "step h");
    return delta / h + 0.5 * m2 * h;
}

/// ε_a(δ, h) = δ/h + m·h^a.
inline double error_bound_holder_at(double delta, double a, double m1a, double h) {
    detail::require_exponent(a);
    detail::require_positive(h, "step h");
    return delta / h + m1a * std::pow(h, a);
}

/// How the step h was chosen, and its value.
class StepRule {
public:
    enum class Kind { C2Optimal, HolderOptimal, Fixed };

    static StepRule fixed(double h) {
        detail::require_positive(h, "fixed step h");
        return StepRule(Kind::Fixed, h);
    }

    /// Resolves the optimal rule for `spec` at noise level δ.
    static StepRule resolve(const SmoothnessSpec& spec, double delta);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double resolved_h() const { return h_; }

private:
    StepRule(Kind k, double h) : kind_(k), h_(h) {}

    Kind kind_;
    double h_;
};

namespace detail {

/// Rejects information states that admit no stable estimator, and δ = 0.
inline void require_stable_setup(const SmoothnessSpec& spec, double delta) {
    using K = SmoothnessSpec::Kind;
    if (spec.kind() == K::M0 || spec.kind() == K::M1) {
        throw UnstableFamilyError(
            std::string("a bound on ") + to_string(spec.kind()) +
            " alone admits no stable derivative estimator: for every delta there are two functions consistent "
            "with the same data whose derivatives differ by a fixed amount (or arbitrarily much for m0). "
            "Supply a bound on m2 or a Hoelder bound on f' instead");
    }
    if (delta == 0.0) {
        throw DegenerateInputError(
            "delta = 0 makes the optimal step degenerate (h = 0); for noiseless data use plain finite "
            "differences with a step of your choice");
    }
    require_positive(delta, "delta");
    require_positive(spec.bound(), "smoothness bound");
}

} // namespace detail

inline StepRule StepRule::resolve(const SmoothnessSpec& spec, double delta) {
    detail::require_stable_setup(spec, delta);
    if (spec.kind() == SmoothnessSpec::Kind::C2) return StepRule(Kind::C2Optimal, optimal_step_c2(delta, spec.bound()));
    return StepRule(Kind::HolderOptimal, optimal_step_holder(delta, *spec.exponent(), spec.bound()));
}

/// Guaranteed bound at the optimal step for `spec`.
inline double guaranteed_bound(const SmoothnessSpec& spec, double delta) {
    detail::require_stable_setup(spec, delta);
    if (spec.kind() == SmoothnessSpec::Kind::C2) return error_bound_c2(delta, spec.bound());
    return error_bound_holder(delta, *spec.exponent(), spec.bound());
}

/// Guaranteed bound for `spec` at an arbitrary step h.
inline double guaranteed_bound_at(const SmoothnessSpec& spec, double delta, double h) {
    detail::require_stable_setup(spec, delta);
    if (spec.kind() == SmoothnessSpec::Kind::C2) return error_bound_c2_at(delta, spec.bound(), h);
    return error_bound_holder_at(delta, *spec.exponent(), spec.bound(), h);
}

/// (f_δ(x+h) - f_δ(x-h)) / (2h).
inline double central_difference(const NoisyOracle& oracle, double x, double h) {
    detail::require_positive(h, "step h");
    const Domain& dom = oracle.domain();
    if (!dom.contains(x - h) || !dom.contains(x + h)) {
        throw DomainError("central difference stencil [x-h, x+h] leaves the domain at x = " + std::to_string(x));
    }
    return (oracle.eval(x + h) - oracle.eval(x - h)) / (2.0 * h);
}

/// Derivative estimates with the step used and the error they are guaranteed to meet.
struct EstimateReport {
    std::vector<double> points;
    std::vector<double> estimates;
    double h_used = 0.0;
    double guaranteed_bound = 0.0;
    /// max |estimate - f′| when the exact derivative is known.
    std::optional<double> measured_sup_error;
    /// Per-point |estimate - f′|, parallel to `points` when present.
    std::optional<std::vector<double>> abs_errors;
    /// Requested points whose stencil left the domain.
    std::size_t dropped = 0;

    [[nodiscard]] bool within_guarantee() const {
        return !measured_sup_error || *measured_sup_error <= guaranteed_bound;
    }
};

namespace detail {

inline void fill_errors(EstimateReport& r, const std::function<double(double)>& exact_derivative) {
    std::vector<double> errs(r.points.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        errs[i] = std::abs(r.estimates[i] - exact_derivative(r.points[i]));
        worst = std::max(worst, errs[i]);
    }
    r.abs_errors = std::move(errs);
    r.measured_sup_error = worst;
}

} // namespace detail

/// Estimates f′ at `points` with a fixed step rule. `bound` is reported as given.
inline EstimateReport estimate_with_step(const NoisyOracle& oracle, const std::vector<double>& points, double h,
                                         double bound) {
    detail::require_positive(h, "step h");
    EstimateReport r;
    r.h_used = h;
    r.guaranteed_bound = bound;
    r.points.reserve(points.size());
    r.estimates.reserve(points.size());
    const Domain& dom = oracle.domain();
    for (double x : points) {
        if (!dom.contains(x - h) || !dom.contains(x + h)) {
            ++r.dropped;
            continue;
        }
        r.points.push_back(x);
        r.estimates.push_back(central_difference(oracle, x, h));
    }
    if (oracle.base().has_derivative()) {
        const FunctionOracle& base = oracle.base();
        detail::fill_errors(r, [&](double x) { return base.derivative(x); });
    }
    return r;
}

/// Stable estimate of f′ at `points` from f_δ under the smoothness information `spec`.
///
/// Throws UnstableFamilyError for M0/M1 specs and DegenerateInputError for δ = 0.
inline EstimateReport estimate(const NoisyOracle& oracle, const SmoothnessSpec& spec, const std::vector<double>& points) {
    const StepRule rule = StepRule::resolve(spec, oracle.delta());
    return estimate_with_step(oracle, points, rule.resolved_h(), guaranteed_bound(spec, oracle.delta()));
}

/// Number of grid spacings k ≥ 1 nearest to h*/Δ; exact halves round up.
inline std::size_t snap_step_count(double ideal_h, double spacing) {
    detail::require_positive(ideal_h, "ideal step");
    detail::require_positive(spacing, "grid spacing");
    const double k = std::floor(ideal_h / spacing + 0.5);
    return k < 1.0 ? std::size_t{1} : static_cast<std::size_t>(k);
}

/// Central differences on a sampled signal with the step snapped to the grid.
///
/// The bound is recomputed at the snapped step, so it is the honest guarantee
/// for the step actually used rather than the closed-form optimum.
inline EstimateReport estimate_on_grid(const GridSignal& signal, const SmoothnessSpec& spec,
                                       const std::function<double(double)>& exact_derivative = {}) {
    const StepRule rule = StepRule::resolve(spec, signal.delta());
    const std::size_t k = snap_step_count(rule.resolved_h(), signal.spacing());
    const std::size_t n = signal.size();
    if (2 * k > n - 1) {
        throw GridTooShortError("step of " + std::to_string(k) + " spacings needs at least " + std::to_string(2 * k + 1) +
                                " samples, signal has " + std::to_string(n));
    }
    const double h = static_cast<double>(k) * signal.spacing();

    EstimateReport r;
    r.h_used = h;
    r.guaranteed_bound = guaranteed_bound_at(spec, signal.delta(), h);
    r.dropped = 2 * k;
    const auto& v = signal.values();
    for (std::size_t i = k; i + k < n; ++i) {
        r.points.push_back(signal.x_at(i));
        r.estimates.push_back((v[i + k] - v[i - k]) / (2.0 * h));
    }
    if (exact_derivative) detail::fill_errors(r, exact_derivative);
    return r;
}

} // namespace stablederiv
