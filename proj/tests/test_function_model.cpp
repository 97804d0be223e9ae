#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "stablederiv/corpus.hpp"
#include "stablederiv/function_model.hpp"

using namespace stablederiv;

namespace {

FunctionOracle square() {
    return FunctionOracle("x^2", [](double x) { return x * x; }, [](double x) { return 2.0 * x; });
}

FunctionOracle zero_fn() { return FunctionOracle("zero", [](double) { return 0.0; }); }

std::vector<NoiseModel> all_models() {
    return {noise::None{}, noise::UniformHash{7}, noise::UniformHash{12345}, noise::CosineAdversarial{0.1},
            noise::ConstantSign{+1}, noise::ConstantSign{-1}};
}

} // namespace

TEST(EvalNoisy, ZeroNoiseIsIdentity) {
    const NoisyOracle o(square(), 0.0);
    EXPECT_EQ(eval_noisy(o, 1.5), 2.25);
}

TEST(EvalNoisy, ConstantSignAddsDelta) {
    const NoisyOracle o(zero_fn(), 0.1, noise::ConstantSign{+1});
    for (double x : {-3.0, 0.0, 0.5, 1e6}) EXPECT_EQ(eval_noisy(o, x), 0.1);
    const NoisyOracle neg(zero_fn(), 0.1, noise::ConstantSign{-1});
    EXPECT_EQ(eval_noisy(neg, 2.0), -0.1);
}

TEST(EvalNoisy, HashNoiseWithinDeltaOfSin) {
    const FunctionOracle s("sin", [](double x) { return std::sin(x); });
    const NoisyOracle o(s, 1e-3, noise::UniformHash{7});
    const double v = eval_noisy(o, 0.25);
    EXPECT_LE(std::abs(v - std::sin(0.25)), 1e-3);
    EXPECT_NE(v, std::sin(0.25));
    // Fixed by the hash design; guards against accidental changes of the noise stream.
    EXPECT_EQ(v, eval_noisy(NoisyOracle(s, 1e-3, noise::UniformHash{7}), 0.25));
}

TEST(EvalNoisy, OutsideDomainThrows) {
    const FunctionOracle f("sqrt", [](double x) { return std::sqrt(x); }, std::nullopt, Domain::half_line());
    const NoisyOracle o(f, 0.01, noise::UniformHash{1});
    EXPECT_THROW((void)eval_noisy(o, -0.5), DomainError);
    EXPECT_NO_THROW((void)eval_noisy(o, 0.0));
}

TEST(EvalNoisy, RejectsBadParameters) {
    EXPECT_THROW(NoisyOracle(zero_fn(), -1e-3), ParameterError);
    EXPECT_THROW(NoisyOracle(zero_fn(), 1e-3, noise::CosineAdversarial{0.0}), ParameterError);
    EXPECT_THROW(NoisyOracle(zero_fn(), 1e-3, noise::ConstantSign{0}), ParameterError);
}

TEST(EvalNoisy, CosineNoiseFlipsAcrossTheStencil) {
    const double h = 0.1;
    const double delta = 1e-3;
    const NoisyOracle o(zero_fn(), delta, noise::CosineAdversarial{h});
    // n(x+h) - n(x-h) = 2δ·cos(πx/(2h)): extremal at x = 0, zero at x = h.
    EXPECT_NEAR(o.eval(h) - o.eval(-h), 2.0 * delta, 1e-15);
    EXPECT_NEAR(o.eval(2.0 * h) - o.eval(0.0), 0.0, 1e-15);
}

// Property: the perturbation never exceeds δ, checked with the same floating
// point expression a caller would use.
TEST(NoisyOracleProperty, NoiseBound) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> xdist(-50.0, 50.0);
    std::uniform_real_distribution<double> ldist(-9.0, 0.0);
    const std::vector<FunctionOracle> bases = {
        FunctionOracle("sin", [](double x) { return std::sin(x); }), square(),
        FunctionOracle("big", [](double x) { return 1e6 + x; })};
    for (const auto& base : bases) {
        for (const auto& model : all_models()) {
            for (int trial = 0; trial < 20; ++trial) {
                const double delta = std::pow(10.0, ldist(rng));
                const NoisyOracle o(base, delta, model);
                for (int i = 0; i < 200; ++i) {
                    const double x = xdist(rng);
                    ASSERT_LE(std::abs(o.eval(x) - base.eval(x)), delta) << base.name() << " x=" << x;
                }
            }
        }
    }
}

// Property: noise is a function of position, not of query order.
TEST(NoisyOracleProperty, Purity) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> xdist(-5.0, 5.0);
    std::vector<double> xs(500);
    for (auto& x : xs) x = xdist(rng);
    for (const auto& model : all_models()) {
        const NoisyOracle o(FunctionOracle("sin", [](double x) { return std::sin(x); }), 1e-2, model);
        std::vector<double> forward;
        for (double x : xs) forward.push_back(o.eval(x));
        std::vector<std::size_t> order(xs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order) ASSERT_EQ(o.eval(xs[i]), forward[i]);
    }
}

TEST(HashNoise, SignedZeroHashesAlike) {
    EXPECT_EQ(detail::hash_unit(3, 0.0), detail::hash_unit(3, -0.0));
    EXPECT_NE(detail::hash_unit(3, 0.0), detail::hash_unit(4, 0.0));
}

TEST(HashNoise, RoughlyUniform) {
    double sum = 0.0;
    double lo = 1.0;
    double hi = -1.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = detail::hash_unit(11, 0.001 * i);
        sum += u;
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    EXPECT_NEAR(sum / n, 0.0, 0.03);
    EXPECT_LT(lo, -0.99);
    EXPECT_GT(hi, 0.99);
}

TEST(SupNorm, SinOnWideWindow) {
    const FunctionOracle s("sin", [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); });
    EXPECT_NEAR(estimate_sup_norm(s, Which::F, 20001), 1.0, 1e-6);
    EXPECT_NEAR(estimate_sup_norm(s, Which::DF, 20001), 1.0, 1e-12);
}

TEST(SupNorm, ZeroFunction) { EXPECT_EQ(estimate_sup_norm(zero_fn(), Which::F, 7), 0.0); }

TEST(SupNorm, MissingDerivativeIsCapabilityError) {
    EXPECT_THROW((void)estimate_sup_norm(zero_fn(), Which::DF, 10), CapabilityError);
}

TEST(SupNorm, MonotoneOnNestedGrids) {
    const FunctionOracle f("wiggle", [](double x) { return std::sin(7.3 * x) * std::exp(-0.1 * x * x); });
    double prev = 0.0;
    for (std::size_t intervals = 10; intervals <= 10240; intervals *= 2) {
        const double v = estimate_sup_norm(f, Which::F, intervals + 1);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(ProbeGrid, NestsExactly) {
    const auto coarse = probe_grid({-3.0, 3.0}, 101);
    const auto fine = probe_grid({-3.0, 3.0}, 401);
    for (std::size_t i = 0; i < coarse.size(); ++i) ASSERT_EQ(coarse[i], fine[4 * i]);
}

TEST(HolderSeminorm, Constant) {
    const FunctionOracle c("c", [](double) { return 4.2; });
    EXPECT_EQ(estimate_holder_seminorm(c, 0.5, {-1.0, 1.0}, 101), 0.0);
}

TEST(HolderSeminorm, IdentityLipschitz) {
    const FunctionOracle id("x", [](double x) { return x; });
    EXPECT_NEAR(estimate_holder_seminorm(id, 1.0, {-2.0, 5.0}, 301), 1.0, 1e-12);
}

TEST(HolderSeminorm, AbsSqrtHasSeminormOne) {
    // |x|^a is a-Hölder with constant exactly 1, attained against y = 0.
    const FunctionOracle g("|x|^0.5", [](double x) { return std::sqrt(std::abs(x)); });
    EXPECT_NEAR(estimate_holder_seminorm(g, 0.5, {-1.0, 1.0}, 401), 1.0, 1e-12);
}

TEST(HolderSeminorm, SignedSqrtHasSeminormSqrtTwo) {
    // Attained by x = -t, y = t: 2√t / √(2t) = √2.
    const FunctionOracle g("sign(x)|x|^0.5", [](double x) { return std::copysign(std::sqrt(std::abs(x)), x); });
    EXPECT_NEAR(estimate_holder_seminorm(g, 0.5, {-1.0, 1.0}, 401), std::sqrt(2.0), 1e-12);
}

TEST(HolderSeminorm, RejectsBadExponent) {
    const FunctionOracle id("x", [](double x) { return x; });
    EXPECT_THROW((void)estimate_holder_seminorm(id, 0.0, {0.0, 1.0}, 10), ParameterError);
    EXPECT_THROW((void)estimate_holder_seminorm(id, 1.5, {0.0, 1.0}, 10), ParameterError);
    EXPECT_THROW((void)estimate_holder_seminorm(id, 0.5, {0.0, 1.0}, 1), ParameterError);
}

TEST(HolderSeminorm, MonotoneUnderRefinement) {
    const FunctionOracle g("cos3", [](double x) { return std::cos(3.0 * x); });
    const double coarse = estimate_holder_seminorm(g, 0.7, {-2.0, 2.0}, 41);
    const double fine = estimate_holder_seminorm(g, 0.7, {-2.0, 2.0}, 161);
    EXPECT_GE(fine, coarse);
}

TEST(HolderNorm, AddsSupPart) {
    const FunctionOracle g("|x|^0.5", [](double x) { return std::sqrt(std::abs(x)); });
    EXPECT_NEAR(estimate_holder_norm(g, 0.5, {-1.0, 1.0}, 401), 2.0, 1e-12);
}

// Property: declared Hölder bounds of the corpus survive the brute-force check.
TEST(Corpus, DeclaredSeminormsAreConsistent) {
    for (const auto& name : corpus_names()) {
        const CorpusEntry e = corpus_function(name);
        const auto& spec = e.natural_spec;
        const double a = spec.kind() == SmoothnessSpec::Kind::C2 ? 1.0 : *spec.exponent();
        const double measured = estimate_holder_seminorm(e.oracle.derivative_oracle(), a, {-3.0, 3.0}, 401);
        EXPECT_LE(measured, spec.bound() * (1.0 + 1e-9)) << name;
    }
}

TEST(Corpus, DerivativesMatchFiniteDifferences) {
    for (const auto& name : corpus_names()) {
        const CorpusEntry e = corpus_function(name);
        for (double x : {-2.3, -0.7, 0.4, 1.9}) {
            const double t = 1e-6;
            const double fd = (e.oracle(x + t) - e.oracle(x - t)) / (2.0 * t);
            EXPECT_NEAR(fd, e.oracle.derivative(x), 1e-5) << name << " at " << x;
        }
    }
}

TEST(Corpus, UnknownNameIsConfigurationError) {
    EXPECT_THROW((void)corpus_function("cosh"), ConfigurationError);
    EXPECT_THROW((void)corpus_function("holder:a=abc"), ConfigurationError);
    EXPECT_THROW((void)corpus_function("holder:a=1.5"), ConfigurationError);
}

TEST(GridSignal, RequiresThreeSamples) {
    EXPECT_THROW(GridSignal(0.0, 0.1, {1.0, 2.0}, 0.0), ParameterError);
    EXPECT_THROW(GridSignal(0.0, 0.0, {1.0, 2.0, 3.0}, 0.0), ParameterError);
    const GridSignal g(1.0, 0.5, {1.0, 2.0, 3.0}, 0.0);
    EXPECT_EQ(g.x_at(2), 2.0);
}
