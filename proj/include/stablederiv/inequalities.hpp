#pragma once

// Landau–Kolmogorov bounds on m1 = sup|f′| from m0 = sup|f| and m2 = sup|f″|:
//   ℝ             m1 <= √(2 m0 m2)
//   (0, ∞)        m1 <= 2√(m0 m2)
//   (0, L)        same as (0, ∞) when L >= 2√(m0/m2), otherwise
//                 m1 <= (2/L) m0 + (L/2) m2
// The interval length is called L here; h is reserved for difference steps.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>

#include "stablederiv/errors.hpp"
#include "stablederiv/function_model.hpp"

namespace stablederiv {

class DomainSpec {
public:
    enum class Kind { WholeLine, HalfLine, Interval };

    static DomainSpec whole_line() { return DomainSpec(Kind::WholeLine, 0.0); }
    static DomainSpec half_line() { return DomainSpec(Kind::HalfLine, 0.0); }
    static DomainSpec interval(double length) {
        if (!(length > 0.0) || !std::isfinite(length)) throw ParameterError("interval length L must be positive");
        return DomainSpec(Kind::Interval, length);
    }

    [[nodiscard]] Kind kind() const { return kind_; }
    /// Interval length; 0 for unbounded kinds.
    [[nodiscard]] double length() const { return length_; }

private:
    DomainSpec(Kind k, double L) : kind_(k), length_(L) {}

    Kind kind_;
    double length_;
};

enum class InequalityRule { WholeLine, HalfLine, ShortInterval };

/// Stable label written to reports and CSV for each rule.
inline const char* rule_label(InequalityRule r) {
    switch (r) {
    case InequalityRule::WholeLine: return "eq-1.2";
    case InequalityRule::HalfLine: return "eq-1.3";
    case InequalityRule::ShortInterval: return "eq-1.4";
    }
    return "?";
}

struct InequalityResult {
    double bound_m1 = 0.0;
    InequalityRule rule_applied = InequalityRule::WholeLine;
    /// 2√(m0/m2); +∞ when m2 = 0 < m0.
    double threshold_length = 0.0;
};

namespace detail {

/// √(c·m0·m2) with 0·∞ read as 0: m0 = 0 forces f ≡ 0, m2 = 0 on a half-line or ℝ forces f′ ≡ 0.
inline double product_bound(double c, double m0, double m2) {
    if (m0 == 0.0 || m2 == 0.0) return 0.0;
    return std::sqrt(c * m0 * m2);
}

inline double threshold_length(double m0, double m2) {
    if (m0 == 0.0) return 0.0;
    if (m2 == 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * std::sqrt(m0 / m2);
}

} // namespace detail

inline InequalityResult m1_bound(double m0, double m2, DomainSpec domain) {
    if (!(m0 >= 0.0) || !(m2 >= 0.0)) throw ParameterError("m0 and m2 must be nonnegative");
    InequalityResult r;
    r.threshold_length = detail::threshold_length(m0, m2);
    switch (domain.kind()) {
    case DomainSpec::Kind::WholeLine:
        r.rule_applied = InequalityRule::WholeLine;
        r.bound_m1 = detail::product_bound(2.0, m0, m2);
        break;
    case DomainSpec::Kind::HalfLine:
        r.rule_applied = InequalityRule::HalfLine;
        r.bound_m1 = 2.0 * detail::product_bound(1.0, m0, m2);
        break;
    case DomainSpec::Kind::Interval: {
        if (m2 == 0.0) throw ParameterError("m2 = 0 on an interval leaves the threshold 2*sqrt(m0/m2) undefined");
        const double L = domain.length();
        if (L >= r.threshold_length) {
            r.rule_applied = InequalityRule::HalfLine;
            r.bound_m1 = 2.0 * detail::product_bound(1.0, m0, m2);
        } else {
            r.rule_applied = InequalityRule::ShortInterval;
            r.bound_m1 = (2.0 / L) * m0 + (L / 2.0) * m2;
        }
        break;
    }
    }
    return r;
}

struct InequalityVerification {
    double measured_m1 = 0.0;
    double bound_m1 = 0.0;
    bool holds = false;
};

/// Default probe window matching a DomainSpec: [0, L] for intervals.
inline Window window_for(const DomainSpec& d) {
    switch (d.kind()) {
    case DomainSpec::Kind::Interval: return {0.0, d.length()};
    case DomainSpec::Kind::HalfLine: return {0.0, default_probe_window.hi};
    case DomainSpec::Kind::WholeLine: break;
    }
    return default_probe_window;
}

/// Measures m1 on a dense grid and checks it against m1_bound(m0, m2, domain),
/// with tolerance 1e-9 + 1e-6·bound.
inline InequalityVerification verify_against(const FunctionOracle& oracle, double m0, double m2, DomainSpec domain,
                                             std::optional<Window> window = std::nullopt,
                                             std::size_t grid_points = 20001) {
    if (!oracle.has_derivative()) throw CapabilityError("verify_against needs an oracle with an exact derivative");
    InequalityVerification v;
    v.bound_m1 = m1_bound(m0, m2, domain).bound_m1;
    v.measured_m1 = estimate_sup_norm(oracle, Which::DF, grid_points, window.value_or(window_for(domain)));
    v.holds = v.measured_m1 <= v.bound_m1 + (1e-9 + 1e-6 * v.bound_m1);
    return v;
}

} // namespace stablederiv
