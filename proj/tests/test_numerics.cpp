#include <gtest/gtest.h>

#include <cmath>

#include "riskclaim/density.hpp"
#include "riskclaim/errors.hpp"
#include "riskclaim/numerics.hpp"

using namespace riskclaim;
using namespace riskclaim::numerics;

TEST(RootBracketed, QuadraticRoot) {
    const double r = root_bracketed([](double x) { return x * x - 0.25; }, {0.0, 1.0}, 1e-12);
    EXPECT_NEAR(r, 0.5, 1e-12);
}

TEST(RootBracketed, OddFunction) {
    EXPECT_NEAR(root_bracketed([](double x) { return x; }, {-1.0, 1.0}, 1e-12), 0.0, 1e-12);
}

TEST(RootBracketed, YLambdaEquation) {
    const auto d = PriceDensity::uniform(0.0, 2.0);
    auto h = [&](double y) { return d.quantile(y) * (y + 0.75 - 1.0) - d.capital_integral(y); };
    const double r = root_bracketed(h, {0.26, 1.0}, 1e-12);
    EXPECT_NEAR(r, 0.5, 1e-10);
    EXPECT_LE(std::abs(h(r)), 10 * 1e-12);
}

TEST(RootBracketed, NoSignChange) {
    try {
        root_bracketed([](double x) { return x * x + 1.0; }, {-1.0, 1.0}, 1e-12);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoBracket);
    }
}

TEST(RootBracketed, IterationCap) {
    try {
        root_bracketed([](double x) { return std::cbrt(x - 0.3); }, {0.0, 1.0}, 1e-300, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonConvergence);
    }
}

TEST(RootBracketed, ResubstitutedResidual) {
    for (double c : {0.1, 0.37, 0.9}) {
        auto f = [c](double x) { return std::exp(x) - 1.0 - c; };
        const double r = root_bracketed(f, {0.0, 2.0}, 1e-11);
        EXPECT_LE(std::abs(f(r)), 1e-10);
    }
}

TEST(BracketType, RejectsEmptyWidth) {
    EXPECT_THROW(Bracket(1.0, 1.0), Error);
    EXPECT_THROW(Bracket(2.0, 1.0), Error);
}

TEST(Minimize1D, Parabola) {
    const auto r = minimize_1d([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-12);
    EXPECT_NEAR(r.x, 0.3, 1e-9);
}

TEST(Minimize1D, YLambdaObjective) {
    const auto d = PriceDensity::uniform(0.0, 2.0);
    auto f = [&](double y) { return -(y + 0.75 - 1.0) / d.capital_integral(y); };
    const auto r = minimize_1d(f, 0.05, 1.0, 1e-12);
    EXPECT_NEAR(r.x, 0.5, 1e-6);
}

TEST(Minimize1D, ConstantReturnsLeftEnd) {
    const auto r = minimize_1d([](double) { return 4.0; }, -2.0, 3.0);
    EXPECT_EQ(r.x, -2.0);
    EXPECT_EQ(r.fx, 4.0);
}

TEST(Minimize1D, GridBasinWinsOnTwoWells) {
    // Deeper well near 0.9, shallow well near 0.2.
    auto f = [](double x) { return std::min((x - 0.2) * (x - 0.2), (x - 0.9) * (x - 0.9) - 0.01); };
    const auto r = minimize_1d(f, 0.0, 1.0, 1e-12);
    EXPECT_NEAR(r.x, 0.9, 1e-7);
}

TEST(Minimize2D, InteriorParabola) {
    auto f = [](double x, double y) { return (x - 0.31) * (x - 0.31) + (y - 0.77) * (y - 0.77); };
    Min2DOptions opt;
    opt.coarse_n = 101;
    const auto r = minimize_2d(f, {0.0, 1.0, 0.0, 1.0}, opt);
    EXPECT_NEAR(r.x, 0.31, 1e-7);
    EXPECT_NEAR(r.y, 0.77, 1e-7);
    EXPECT_FALSE(r.flat);
}

TEST(Minimize2D, FlatFunctionFlagged) {
    Min2DOptions opt;
    opt.coarse_n = 50;
    const auto r = minimize_2d([](double, double) { return 0.7; }, {0.0, 0.5, 0.5, 1.0}, opt);
    EXPECT_TRUE(r.flat);
    EXPECT_EQ(r.x, 0.0);
    EXPECT_EQ(r.y, 0.5);
    EXPECT_EQ(r.f, 0.7);
}

TEST(Minimize2D, StaysInsideDomain) {
    // Minimum lies outside the box; result must be clamped to the boundary.
    auto f = [](double x, double y) { return (x + 3.0) * (x + 3.0) + (y - 5.0) * (y - 5.0); };
    Min2DOptions opt;
    opt.coarse_n = 40;
    const auto r = minimize_2d(f, {0.0, 0.4, 0.4, 1.0}, opt);
    EXPECT_GE(r.x, 0.0);
    EXPECT_LE(r.x, 0.4);
    EXPECT_GE(r.y, 0.4);
    EXPECT_LE(r.y, 1.0);
    EXPECT_NEAR(r.x, 0.0, 1e-12);
    EXPECT_NEAR(r.y, 1.0, 1e-12);
}

TEST(IntegrateAdaptive, Linear) {
    EXPECT_NEAR(integrate_adaptive([](double t) { return 2.0 * t; }, 0.0, 1.0), 1.0, 1e-14);
}

TEST(IntegrateAdaptive, StepWithBreakpoints) {
    QuadOptions opt;
    opt.breakpoints = {0.5};
    auto q = [](double t) { return t < 0.5 ? 0.6 : 1.0; };
    EXPECT_NEAR(integrate_adaptive(q, 0.25, 1.0, opt), 0.65, 1e-14);
}

TEST(IntegrateAdaptive, Zero) { EXPECT_EQ(integrate_adaptive([](double) { return 0.0; }, 0.0, 1.0), 0.0); }

TEST(IntegrateAdaptive, PiecewiseLinearExact) {
    QuadOptions opt;
    opt.tol = 1e-14;
    opt.breakpoints = {0.2, 0.55, 0.8};
    auto f = [](double t) {
        if (t < 0.2) return 1.0 + 3.0 * t;
        if (t < 0.55) return 0.4 - t;
        if (t < 0.8) return 2.0 * t;
        return 5.0;
    };
    const double exact = (0.2 + 1.5 * 0.04) + (0.4 * 0.35 - 0.5 * (0.55 * 0.55 - 0.04)) +
                         (0.64 - 0.55 * 0.55) + 5.0 * 0.2;
    EXPECT_NEAR(integrate_adaptive(f, 0.0, 1.0, opt), exact, 1e-14);
}

TEST(IntegrateAdaptive, SmoothAgainstClosedForm) {
    EXPECT_NEAR(integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12), std::exp(1.0) - 1.0,
                1e-11);
}

TEST(IntegrateAdaptive, SubdivisionCap) {
    QuadOptions opt;
    opt.tol = 1e-300;
    opt.max_subdivisions = 10;
    try {
        integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, opt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonConvergence);
    }
}
