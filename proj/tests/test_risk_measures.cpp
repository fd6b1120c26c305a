#include <gtest/gtest.h>

#include <cmath>

#include "reference.hpp"
#include "riskclaim/errors.hpp"
#include "riskclaim/risk_measures.hpp"

using namespace riskclaim;

namespace {
const PriceDensity kU02 = PriceDensity::uniform(0.0, 2.0);
}

TEST(Gamma, Examples) {
    EXPECT_DOUBLE_EQ(gamma_value(WeightFunction::avar(0.75), 0.25), 0.0);
    const auto k = WeightFunction::two_level(0.6, 0.5);
    EXPECT_DOUBLE_EQ(k.value(0.7), 1.75);
    EXPECT_NEAR(gamma_value(k, 0.6), 0.3, 1e-15);
    for (const auto& w : {WeightFunction::avar(0.3), k, WeightFunction::affine(1.2),
                          WeightFunction::steps({{0.0, 0.5}, {0.5, 1.5}})})
        EXPECT_NEAR(gamma_value(w, 1.0), 1.0, 1e-12);
    EXPECT_THROW(gamma_value(k, 1.5), Error);
    EXPECT_THROW(gamma_value(k, -0.1), Error);
}

TEST(Gamma, MatchesQuadrature) {
    const auto k = WeightFunction::affine(1.5);
    for (double x : {0.1, 0.45, 0.8})
        EXPECT_NEAR(gamma_value(k, x), reftest::midpoint([&](double t) { return k.value(t); }, 0.0, x), 1e-9);
}

TEST(Weight, RejectsInvalid) {
    EXPECT_THROW(WeightFunction::steps({{0.0, 1.5}, {0.5, 0.5}}), Error);
    EXPECT_THROW(WeightFunction::steps({{0.0, 0.5}, {0.5, 1.0}}), Error);
    EXPECT_THROW(WeightFunction::avar(0.0), Error);
    EXPECT_THROW(WeightFunction::affine(2.5), Error);
}

TEST(GK, Examples) {
    EXPECT_NEAR(g_k_value(kU02, WeightFunction::avar(0.75), 1.0), 4.0 / 3.0, 1e-15);
    EXPECT_DOUBLE_EQ(g_k_value(kU02, WeightFunction::constant(), 0.3), 1.0);
    const auto d = PriceDensity::discrete({{0.5, 0.2}, {1.0, 0.6}, {1.5, 0.2}});
    EXPECT_NEAR(g_k_value(d, WeightFunction::avar(0.5), 1.0), 1.0, 1e-15);
}

TEST(Price, Examples) {
    EXPECT_DOUBLE_EQ(price(Payoff::two_step(0.0, 1.0, 1.0), kU02), 0.75);
    EXPECT_NEAR(price(Payoff::constant(0.37), kU02), 0.37, 1e-15);
    EXPECT_NEAR(price(Payoff::constant(0.37), PriceDensity::discrete({{0.5, 0.5}, {1.5, 0.5}})), 0.37, 1e-15);
    EXPECT_NEAR(price(Payoff::two_step(0.6, 0.0, 1.0), kU02), 0.9, 1e-15);
}

TEST(Price, CappedInverseMatchesMidpoint) {
    const auto f = Payoff::capped_inverse(0.1, 0.8, 0.6, 1.0, LossFunction::power(2.0));
    const double ref = reftest::midpoint([&](double x) { return 0.5 * x * f(x); }, 0.0, 2.0);
    EXPECT_NEAR(price(f, kU02), ref, 1e-8);
}

TEST(Avar, Examples) {
    const auto f = Payoff::two_step(0.6, 0.0, 1.0);
    EXPECT_NEAR(avar_risk(0.4, Payoff::constant(0.2), kU02), 0.2, 1e-15);
    EXPECT_NEAR(avar_risk(1.0, f, kU02), expectation(f, kU02), 1e-15);
    EXPECT_NEAR(avar_risk(1.0, f, kU02), 0.8, 1e-15);
    EXPECT_NEAR(avar_risk(0.75, f, kU02), 13.0 / 15.0, 1e-14);
    EXPECT_THROW(avar_risk(0.0, f, kU02), Error);
    EXPECT_THROW(avar_risk(1.2, f, kU02), Error);
}

TEST(Avar, MatchesBruteForceTail) {
    const auto f = Payoff::capped_inverse(0.0, 1.0, 0.3, 1.0, LossFunction::exponential(1.0));
    const int n = 100000;
    std::vector<double> x(n), p(n, 1.0 / n);
    for (int i = 0; i < n; ++i) x[i] = f(kU02.quantile((i + 0.5) / n));
    EXPECT_NEAR(avar_risk(0.35, f, kU02), reftest::tail_average(x, p, 0.35), 1e-6);
}

TEST(QuantileRisk, Examples) {
    const auto f = Payoff::two_step(0.3, 0.5, 1.4);
    EXPECT_NEAR(quantile_risk(WeightFunction::constant(), f, kU02), expectation(f, kU02), 1e-14);
    for (double lam : {0.2, 0.5, 0.75, 1.0})
        EXPECT_NEAR(quantile_risk(WeightFunction::avar(lam), f, kU02), avar_risk(lam, f, kU02), 1e-9);
    // k(t) = 2t coincides with the quantile of Uniform(0,2): risk equals price.
    for (const auto& g : {f, Payoff::two_step(0.6, 0.0, 1.0), Payoff::constant(0.4),
                          Payoff::capped_inverse(0.0, 1.0, 0.5, 1.0, LossFunction::power(2.0))})
        EXPECT_NEAR(quantile_risk(WeightFunction::affine(2.0), g, kU02), price(g, kU02), 1e-10);
}

TEST(RobustRisk, Examples) {
    const auto pw = LossFunction::power(2.0);
    const auto f = Payoff::two_step(0.3, 0.5, 1.4);
    const double ref = reftest::midpoint([&](double x) { return 0.5 * pw.value(f(x)); }, 0.0, 2.0);
    EXPECT_NEAR(robust_risk(pw, 1.0, f, kU02), ref, 1e-6);
    EXPECT_NEAR(robust_risk(pw, 0.4, Payoff::constant(0.7), kU02), 0.49, 1e-14);
    EXPECT_NEAR(robust_risk(pw, 0.5, Payoff::two_step(0.0, 1.5, 1.5), kU02), 0.5, 1e-14);
}

TEST(RobustRisk, RejectsDiscrete) {
    const auto d = PriceDensity::discrete({{0.5, 0.5}, {1.5, 0.5}});
    try {
        robust_risk(LossFunction::power(2.0), 0.5, Payoff::constant(0.5), d);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDensity);
    }
}

TEST(ShiftedRisk, Examples) {
    const auto ex = LossFunction::exponential(1.0);
    EXPECT_NEAR(shifted_risk(ex, 0.5, 2.0, Payoff::constant(0.3), kU02), 0.3 - std::log(2.0), 1e-10);
    EXPECT_NEAR(shifted_risk(ex, 0.7, 1.0, Payoff::constant(0.0), kU02), 0.0, 1e-10);
    const auto f = Payoff::two_step(0.3, 0.5, 1.4);
    const double base = shifted_risk(ex, 0.6, 1.5, f, kU02);
    EXPECT_NEAR(shifted_risk(ex, 0.6, 1.5, f.plus(0.25), kU02), base + 0.25, 1e-10);
    EXPECT_LT(shifted_risk(ex, 0.6, 3.0, f, kU02), base);
}

TEST(ShiftedRisk, BracketFailure) {
    try {
        shifted_risk(LossFunction::exponential(1.0), 0.5, 1e-30, Payoff::constant(0.5), kU02, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BracketFailure);
    }
    EXPECT_THROW(shifted_risk(LossFunction::power(2.0), 0.5, 1.0, Payoff::constant(0.5), kU02), Error);
}

TEST(VarRisk, Examples) {
    EXPECT_DOUBLE_EQ(var_risk(0.3, Payoff::constant(0.45), kU02), 0.45);
    EXPECT_DOUBLE_EQ(var_risk(0.25, Payoff::two_step(0.0, 1.5, 1.5), kU02), 0.0);
    EXPECT_DOUBLE_EQ(var_risk(0.25, Payoff::two_step(0.2889, 0.0, 1.5), kU02), 0.2889);
}

TEST(VarRisk, SmallestLevelWithTailBelowLambda) {
    // Brute force: smallest grid m with P[X > m] <= lambda.
    const auto f = Payoff::two_step(0.4, 0.8, 1.6);
    for (double lam : {0.1, 0.2, 0.3, 0.6, 0.7}) {
        double m_ref = 1.0;
        for (int i = 0; i <= 1000; ++i) {
            const double m = i / 1000.0;
            const double tail = reftest::midpoint([&](double x) { return f(x) > m ? 0.5 : 0.0; }, 0.0, 2.0, 20000);
            if (tail <= lam + 1e-9) {
                m_ref = m;
                break;
            }
        }
        EXPECT_NEAR(var_risk(lam, f, kU02), m_ref, 1e-12) << lam;
    }
}

TEST(HardyLittlewood, Examples) {
    const auto uq = QuantileTable::from_knots({{0.0, 0.0}, {1.0, 1.0}});
    const auto hl = hardy_littlewood_bounds(uq, uq);
    EXPECT_NEAR(hl.lower, 1.0 / 6.0, 1e-14);
    EXPECT_NEAR(hl.upper, 1.0 / 3.0, 1e-14);

    // Discrete summation check on a fine grid.
    const int n = 100000;
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = (i + 0.5) / n;
        lo += t * (1.0 - t) / n;
        hi += t * t / n;
    }
    EXPECT_NEAR(hl.lower, lo, 1e-9);
    EXPECT_NEAR(hl.upper, hi, 1e-9);

    const auto c = QuantileTable::from_knots({{0.0, 0.7}, {1.0, 0.7}});
    const auto y = QuantileTable::from_knots({{0.0, 0.2}, {0.4, 0.6}, {0.4, 1.0}, {1.0, 2.0}});
    const auto b = hardy_littlewood_bounds(c, y);
    const double ey = 0.4 * 0.4 + 0.6 * 1.5;
    EXPECT_NEAR(b.lower, 0.7 * ey, 1e-14);
    EXPECT_NEAR(b.upper, 0.7 * ey, 1e-14);
}

TEST(HardyLittlewood, ComonotoneAttainsUpper) {
    const std::vector<double> y{0.2, 0.9, 1.4, 2.5};
    const std::vector<double> p{0.1, 0.4, 0.3, 0.2};
    std::vector<double> x;
    double exy = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        x.push_back(y[i] * y[i] + 1.0);
        exy += p[i] * x[i] * y[i];
    }
    const auto b = hardy_littlewood_bounds(QuantileTable::from_atoms(x, p), QuantileTable::from_atoms(y, p));
    EXPECT_NEAR(b.upper, exy, 1e-13);
    EXPECT_LE(b.lower, b.upper);
}

TEST(HardyLittlewood, RejectsDecreasing) {
    EXPECT_THROW(QuantileTable::from_knots({{0.0, 1.0}, {1.0, 0.0}}), Error);
}
