#pragma once

// The two-function lower-bound construction. With observation f_δ ≡ 0, both
//   f1(x) = -(M/2)·x·(x - 2h)   on [0, 2h],  h = √(2δ/M)
//   f2    = -f1
// satisfy |f_s| <= Mh²/2 = δ, yet f1′(0) = Mh and f2′(0) = -Mh. Whatever value
// b an estimator returns at 0, one of the two is missed by at least
// max(|b - Mh|, |b + Mh|) >= Mh = √(2δM).
//
// f1 is extended to ℝ by odd reflection about 0 followed by 4h-periodic
// continuation. The result is C¹, piecewise quadratic with f″ = ±M, and keeps
// sup|f1| = Mh²/2 and sup|f1′| = Mh.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "stablederiv/errors.hpp"
#include "stablederiv/estimator.hpp"
#include "stablederiv/format.hpp"
#include "stablederiv/function_model.hpp"

namespace stablederiv {

namespace detail {

/// Reduces x into [-2h, 2h) modulo 4h.
inline double reduce_period(double x, double h) {
    const double period = 4.0 * h;
    double r = x - period * std::floor((x + 2.0 * h) / period);
    if (r >= 2.0 * h) r -= period;
    if (r < -2.0 * h) r += period;
    return r;
}

inline double extremal_value(double x, double M, double h) {
    const double r = reduce_period(x, h);
    if (r >= 0.0) return -0.5 * M * r * (r - 2.0 * h);
    const double s = -r;
    return 0.5 * M * s * (s - 2.0 * h);
}

inline double extremal_slope(double x, double M, double h) {
    const double r = reduce_period(x, h);
    return r >= 0.0 ? M * (h - r) : M * (h + r);
}

} // namespace detail

struct AdversarialPair {
    double M;
    double delta;
    double h;
    FunctionOracle f1;
    FunctionOracle f2;
    /// The shared observation f_δ ≡ 0, δ-consistent with both f1 and f2.
    NoisyOracle observed;
};

inline AdversarialPair make_pair(double delta, double M) {
    detail::require_positive(delta, "delta");
    detail::require_positive(M, "M");
    const double h = std::sqrt(2.0 * delta / M);
    FunctionOracle f1(
        "extremal f1", [M, h](double x) { return detail::extremal_value(x, M, h); },
        [M, h](double x) { return detail::extremal_slope(x, M, h); });
    FunctionOracle f2(
        "extremal f2", [M, h](double x) { return -detail::extremal_value(x, M, h); },
        [M, h](double x) { return -detail::extremal_slope(x, M, h); });
    NoisyOracle observed(FunctionOracle("zero", [](double) { return 0.0; }), delta);
    return AdversarialPair{M, delta, h, std::move(f1), std::move(f2), std::move(observed)};
}

/// Mh = √(2δM): no estimator's worst case over the pair can be smaller.
inline double lower_bound(double delta, double M) {
    detail::require_positive(delta, "delta");
    detail::require_positive(M, "M");
    return M * std::sqrt(2.0 * delta / M);
}

/// A black-box derivative estimator. It sees only the observed data.
struct EstimatorHandle {
    std::string description;
    std::function<double(const NoisyOracle&, double)> apply;
};

struct ChallengeRecord {
    std::string estimator;
    double delta = 0.0;
    double M = 0.0;
    double b = 0.0;
    double err_f1 = 0.0;
    double err_f2 = 0.0;
    double worst = 0.0;
    double lower = 0.0;
    bool beaten = false;
};

/// Runs `estimator` on the zero observation at x = 0 and scores it against both
/// members of the pair.
inline ChallengeRecord challenge(const EstimatorHandle& estimator, double delta, double M) {
    const AdversarialPair pair = make_pair(delta, M);
    ChallengeRecord rec;
    rec.estimator = estimator.description;
    rec.delta = delta;
    rec.M = M;
    try {
        rec.b = estimator.apply(pair.observed, 0.0);
    } catch (const std::exception& e) {
        throw EstimatorError("estimator '" + estimator.description + "' failed: " + e.what());
    }
    rec.err_f1 = std::abs(rec.b - pair.f1.derivative(0.0));
    rec.err_f2 = std::abs(rec.b - pair.f2.derivative(0.0));
    rec.worst = std::max(rec.err_f1, rec.err_f2);
    rec.lower = pair.M * pair.h;
    rec.beaten = rec.worst < rec.lower - 1e-12;
    return rec;
}

/// min over b on a uniform grid of `steps` intervals in [-2·mh, 2·mh] of max(|b - mh|, |b + mh|).
inline double minimax_scan(double mh, std::size_t steps) {
    detail::require_positive(mh, "Mh");
    if (steps == 0) throw ParameterError("scan needs at least one step");
    double best = std::numeric_limits<double>::infinity();
    for (double b : probe_grid({-2.0 * mh, 2.0 * mh}, steps + 1)) {
        best = std::min(best, std::max(std::abs(b - mh), std::abs(b + mh)));
    }
    return best;
}

struct OptimalityWitness {
    double lower = 0.0;
    double upper = 0.0;
    double ratio = 0.0;
};

/// Adversary lower bound (pair with M = m2) against the central difference's
/// guaranteed error on the C² family. They coincide: ratio = 1.
inline OptimalityWitness optimality_witness(double delta, double m2) {
    OptimalityWitness w;
    w.lower = lower_bound(delta, m2);
    w.upper = error_bound_c2(delta, m2);
    w.ratio = w.upper / w.lower;
    return w;
}

// ---------------------------------------------------------------------------
// Estimator zoo

inline EstimatorHandle zero_estimator() {
    return {"zero", [](const NoisyOracle&, double) { return 0.0; }};
}

inline EstimatorHandle central_difference_estimator(double h) {
    detail::require_positive(h, "step h");
    return {"central-difference(h=" + format_double(h) + ")",
            [h](const NoisyOracle& data, double x) { return central_difference(data, x, h); }};
}

/// Five-point least-squares slope: Σ k·f(x + kh) / (10h), k = -2..2.
inline EstimatorHandle smoothed_difference_estimator(double h) {
    detail::require_positive(h, "step h");
    return {"smoothed-5pt(h=" + format_double(h) + ")", [h](const NoisyOracle& data, double x) {
                double acc = 0.0;
                for (int k = -2; k <= 2; ++k) acc += k * data.eval(x + k * h);
                return acc / (10.0 * h);
            }};
}

/// zero, central differences at h ∈ {0.01, 0.1, 1} and a 5-point smoothed difference.
inline std::vector<EstimatorHandle> estimator_zoo() {
    return {zero_estimator(), central_difference_estimator(0.01), central_difference_estimator(0.1),
            central_difference_estimator(1.0), smoothed_difference_estimator(0.1)};
}

} // namespace stablederiv
