#pragma once

// Exact functions, noisy observations of them, smoothness declarations and
// brute-force norm oracles used to validate those declarations.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "stablederiv/errors.hpp"

namespace stablederiv {

/// Closed interval [lo, hi] used for probe grids.
struct Window {
    double lo = -10.0;
    double hi = 10.0;

    [[nodiscard]] double length() const { return hi - lo; }
};

/// Probe window used for unbounded domains unless the caller supplies one.
inline constexpr Window default_probe_window{-10.0, 10.0};

/// `n` uniformly spaced points covering `w`, endpoints included.
///
/// Points are computed as lo + (i / (n-1)) * (hi - lo). Because i/(n-1) is a
/// correctly rounded quotient, refining n-1 -> k(n-1) reproduces the coarse
/// points bit for bit, so grids nest exactly.
inline std::vector<double> probe_grid(Window w, std::size_t n) {
    if (n == 0) throw ParameterError("probe grid needs at least one point");
    if (!(w.lo <= w.hi)) throw ParameterError("probe window must satisfy lo <= hi");
    std::vector<double> xs(n);
    if (n == 1) {
        xs[0] = w.lo;
        return xs;
    }
    const double span = w.hi - w.lo;
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = w.lo + (static_cast<double>(i) / denom) * span;
    }
    xs[n - 1] = w.hi;
    return xs;
}

/// Domain of a function oracle: ℝ, [0, ∞) or [lo, hi].
class Domain {
public:
    enum class Kind { WholeLine, HalfLine, Interval };

    static Domain whole_line() { return Domain(Kind::WholeLine, -inf(), inf()); }
    static Domain half_line() { return Domain(Kind::HalfLine, 0.0, inf()); }
    static Domain interval(double lo, double hi) {
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
            throw ParameterError("interval domain needs finite lo < hi");
        }
        return Domain(Kind::Interval, lo, hi);
    }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double lo() const { return lo_; }
    [[nodiscard]] double hi() const { return hi_; }
    [[nodiscard]] bool bounded() const { return kind_ == Kind::Interval; }

    [[nodiscard]] bool contains(double x) const { return x >= lo_ && x <= hi_; }

    /// Window for sup-norm probing: the interval itself, or a clipped default.
    [[nodiscard]] Window default_window() const {
        switch (kind_) {
        case Kind::Interval: return {lo_, hi_};
        case Kind::HalfLine: return {0.0, default_probe_window.hi};
        case Kind::WholeLine: break;
        }
        return default_probe_window;
    }

private:
    Domain(Kind k, double lo, double hi) : kind_(k), lo_(lo), hi_(hi) {}
    static constexpr double inf() { return std::numeric_limits<double>::infinity(); }

    Kind kind_;
    double lo_;
    double hi_;
};

/// An exact function with an optional exact derivative.
///
/// Both callables must be pure. Oracles are immutable once built and may be
/// evaluated concurrently.
class FunctionOracle {
public:
    using Fn = std::function<double(double)>;

    FunctionOracle(std::string name, Fn f, std::optional<Fn> df = std::nullopt,
                   Domain domain = Domain::whole_line())
        : name_(std::move(name)), f_(std::move(f)), df_(std::move(df)), domain_(domain) {
        if (!f_) throw ParameterError("function oracle needs a callable");
        if (df_ && !*df_) df_.reset();
    }

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const Domain& domain() const { return domain_; }
    [[nodiscard]] bool has_derivative() const { return df_.has_value(); }

    [[nodiscard]] double operator()(double x) const { return f_(x); }

    [[nodiscard]] double eval(double x) const {
        if (!domain_.contains(x)) throw DomainError("point " + std::to_string(x) + " outside domain of " + name_);
        return f_(x);
    }

    [[nodiscard]] double derivative(double x) const {
        if (!df_) throw CapabilityError("oracle '" + name_ + "' has no exact derivative");
        if (!domain_.contains(x)) throw DomainError("point " + std::to_string(x) + " outside domain of " + name_);
        return (*df_)(x);
    }

    /// f′ as an oracle in its own right (no derivative of its own).
    [[nodiscard]] FunctionOracle derivative_oracle() const {
        if (!df_) throw CapabilityError("oracle '" + name_ + "' has no exact derivative");
        return FunctionOracle(name_ + "'", *df_, std::nullopt, domain_);
    }

private:
    std::string name_;
    Fn f_;
    std::optional<Fn> df_;
    Domain domain_;
};

/// A priori smoothness information: which norm is bounded and by how much.
class SmoothnessSpec {
public:
    enum class Kind { M0, M1, C2, Holder };

    static SmoothnessSpec m0(double bound) { return SmoothnessSpec(Kind::M0, bound, std::nullopt); }
    static SmoothnessSpec m1(double bound) { return SmoothnessSpec(Kind::M1, bound, std::nullopt); }
    static SmoothnessSpec c2(double m2) { return SmoothnessSpec(Kind::C2, m2, std::nullopt); }
    /// Hölder bound m_{1+a} on f′ with exponent a ∈ (0, 1].
    static SmoothnessSpec holder(double a, double m) { return SmoothnessSpec(Kind::Holder, m, a); }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double bound() const { return bound_; }
    [[nodiscard]] std::optional<double> exponent() const { return exponent_; }

private:
    SmoothnessSpec(Kind kind, double bound, std::optional<double> a)
        : kind_(kind), bound_(bound), exponent_(a) {
        if (!(bound >= 0.0)) throw ParameterError("smoothness bound must be >= 0");
        if (a && !(*a > 0.0 && *a <= 1.0)) throw ParameterError("Hoelder exponent must lie in (0, 1]");
    }

    Kind kind_;
    double bound_;
    std::optional<double> exponent_;
};

inline const char* to_string(SmoothnessSpec::Kind k) {
    switch (k) {
    case SmoothnessSpec::Kind::M0: return "m0";
    case SmoothnessSpec::Kind::M1: return "m1";
    case SmoothnessSpec::Kind::C2: return "c2";
    case SmoothnessSpec::Kind::Holder: return "holder";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Noise models

namespace noise {

struct None {};

/// Pseudo-random noise in [-δ, δ) hashed from (seed, bit pattern of x).
struct UniformHash {
    std::uint64_t seed = 0;
};

/// n(x) = δ·sin(πx / (2 h_ref)), i.e. a cosine shifted by a quarter period.
///
/// With step h = h_ref the samples at x ± h have opposite signs and the noise
/// contributes δ·cos(πx/(2h))/h to the central difference, reaching the worst
/// case δ/h at x ≡ 0 (mod 4h).
struct CosineAdversarial {
    double h_ref = 1.0;
};

struct ConstantSign {
    int sign = +1;
};

} // namespace noise

using NoiseModel = std::variant<noise::None, noise::UniformHash, noise::CosineAdversarial, noise::ConstantSign>;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic value in [-1, 1) from (seed, x). -0.0 and +0.0 hash alike.
inline double hash_unit(std::uint64_t seed, double x) {
    if (x == 0.0) x = 0.0;
    const auto bits = std::bit_cast<std::uint64_t>(x);
    const std::uint64_t h = splitmix64(splitmix64(seed) ^ bits);
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

} // namespace detail

/// f_δ: an exact oracle plus a deterministic perturbation bounded by δ.
///
/// The perturbation at x depends only on (model, x), never on query order, so
/// f_δ is a genuine function.
class NoisyOracle {
public:
    NoisyOracle(FunctionOracle base, double delta, NoiseModel model = noise::None{})
        : base_(std::move(base)), delta_(delta), model_(model) {
        if (!(delta >= 0.0) || !std::isfinite(delta)) throw ParameterError("noise amplitude delta must be finite and >= 0");
        if (const auto* c = std::get_if<noise::CosineAdversarial>(&model_); c && !(c->h_ref > 0.0)) {
            throw ParameterError("cosine-adversarial noise needs h_ref > 0");
        }
        if (const auto* s = std::get_if<noise::ConstantSign>(&model_); s && s->sign != 1 && s->sign != -1) {
            throw ParameterError("constant-sign noise needs sign +1 or -1");
        }
    }

    [[nodiscard]] const FunctionOracle& base() const { return base_; }
    [[nodiscard]] double delta() const { return delta_; }
    [[nodiscard]] const NoiseModel& model() const { return model_; }
    [[nodiscard]] const Domain& domain() const { return base_.domain(); }

    /// The raw perturbation n(x), |n(x)| <= δ.
    [[nodiscard]] double noise_at(double x) const {
        return std::visit(
            [&](const auto& m) -> double {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, noise::None>) {
                    return 0.0;
                } else if constexpr (std::is_same_v<M, noise::UniformHash>) {
                    return delta_ * detail::hash_unit(m.seed, x);
                } else if constexpr (std::is_same_v<M, noise::CosineAdversarial>) {
                    return delta_ * std::sin(std::numbers::pi * x / (2.0 * m.h_ref));
                } else {
                    return m.sign > 0 ? delta_ : -delta_;
                }
            },
            model_);
    }

    /// f_δ(x). Guarantees |f_δ(x) - f(x)| <= δ as computed in floating point.
    [[nodiscard]] double eval(double x) const {
        const double exact = base_.eval(x);
        double v = exact + noise_at(x);
        while (std::abs(v - exact) > delta_) v = std::nextafter(v, exact);
        return v;
    }

    [[nodiscard]] double operator()(double x) const { return eval(x); }

private:
    FunctionOracle base_;
    double delta_;
    NoiseModel model_;
};

inline double eval_noisy(const NoisyOracle& oracle, double x) { return oracle.eval(x); }

/// Samples of f_δ on the uniform grid x0 + kΔ.
class GridSignal {
public:
    GridSignal(double x0, double spacing, std::vector<double> values, double delta)
        : x0_(x0), spacing_(spacing), values_(std::move(values)), delta_(delta) {
        if (!(spacing > 0.0) || !std::isfinite(spacing)) throw ParameterError("grid spacing must be positive");
        if (values_.size() < 3) throw ParameterError("grid signal needs at least 3 samples");
        if (!(delta >= 0.0)) throw ParameterError("noise amplitude delta must be >= 0");
    }

    /// Samples f_δ at x0 + kΔ, k = 0..n-1.
    static GridSignal sample(const NoisyOracle& oracle, double x0, double spacing, std::size_t n) {
        std::vector<double> v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = oracle.eval(x0 + static_cast<double>(k) * spacing);
        return GridSignal(x0, spacing, std::move(v), oracle.delta());
    }

    [[nodiscard]] double x0() const { return x0_; }
    [[nodiscard]] double spacing() const { return spacing_; }
    [[nodiscard]] double delta() const { return delta_; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] double x_at(std::size_t k) const { return x0_ + static_cast<double>(k) * spacing_; }

private:
    double x0_;
    double spacing_;
    std::vector<double> values_;
    double delta_;
};

// ---------------------------------------------------------------------------
// Norm oracles

enum class Which { F, DF };

/// max |f| (or |f′|) over a uniform probe grid. Undershoots the true sup by
/// at most the variation between neighbouring probes.
inline double estimate_sup_norm(const FunctionOracle& oracle, Which which, std::size_t grid_points,
                                std::optional<Window> window = std::nullopt) {
    if (which == Which::DF && !oracle.has_derivative()) {
        throw CapabilityError("sup of f' requested but oracle '" + oracle.name() + "' has no derivative");
    }
    const Window w = window.value_or(oracle.domain().default_window());
    double best = 0.0;
    for (double x : probe_grid(w, grid_points)) {
        const double v = which == Which::F ? oracle.eval(x) : oracle.derivative(x);
        best = std::max(best, std::abs(v));
    }
    return best;
}

/// Brute-force Hölder seminorm: max over grid pairs x != y of |g(x)-g(y)| / |x-y|^a.
inline double estimate_holder_seminorm(const FunctionOracle& g, double a, Window window, std::size_t grid_points) {
    if (!(a > 0.0 && a <= 1.0)) throw ParameterError("Hoelder exponent must lie in (0, 1]");
    if (grid_points < 2) throw ParameterError("seminorm estimate needs at least 2 grid points");
    const auto xs = probe_grid(window, grid_points);
    std::vector<double> gs(xs.size());
    std::transform(xs.begin(), xs.end(), gs.begin(), [&](double x) { return g.eval(x); });

    double best = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const double dx = xs[j] - xs[i];
            if (dx == 0.0) continue;
            const double q = std::abs(gs[j] - gs[i]) / (a == 1.0 ? dx : std::pow(dx, a));
            best = std::max(best, q);
        }
    }
    return best;
}

/// Full Hölder norm: seminorm plus sup|g|, both over the probe window.
inline double estimate_holder_norm(const FunctionOracle& g, double a, Window window, std::size_t grid_points) {
    return estimate_holder_seminorm(g, a, window, grid_points) + estimate_sup_norm(g, Which::F, grid_points, window);
}

} // namespace stablederiv
