#include <gtest/gtest.h>

#include <cmath>

#include "riskclaim/errors.hpp"
#include "riskclaim/io.hpp"
#include "riskclaim/risk_measures.hpp"

using namespace riskclaim;

namespace {
std::size_t error_position(const std::function<void()>& f) {
    try {
        f();
    } catch (const SpecError& e) {
        return e.position();
    }
    ADD_FAILURE() << "no SpecError";
    return 0;
}
}  // namespace

TEST(ParseDensity, Uniform) {
    const auto d = parse_density("uniform:0,2");
    EXPECT_EQ(d.kind(), PriceDensity::Kind::Uniform);
    EXPECT_DOUBLE_EQ(d.quantile(0.5), 1.0);
}

TEST(ParseDensity, PiecewiseLinear) {
    const auto d = parse_density("plq:0:0.2,0.5:0.8,1:2.2");
    EXPECT_EQ(d.knots().size(), 3u);
    EXPECT_NEAR(d.mean(), 1.0, 1e-15);
    const auto t = parse_density("plq:0:0.3,0.6:0.9,tail:0.4");
    ASSERT_TRUE(t.tail_scale());
    EXPECT_DOUBLE_EQ(*t.tail_scale(), 0.4);
}

TEST(ParseDensity, AtomsFile) {
    const auto d = parse_density(std::string("atoms:") + RISKCLAIM_TEST_DATA + "/atoms_example.csv");
    ASSERT_EQ(d.atoms().size(), 2u);
    EXPECT_DOUBLE_EQ(d.cdf(1.0), 0.5);
    EXPECT_THROW(parse_density("atoms:/nonexistent/file.csv"), SpecError);
}

TEST(ParseDensity, ErrorPositions) {
    EXPECT_EQ(error_position([] { parse_density("uniform:0,x"); }), 10u);
    EXPECT_EQ(error_position([] { parse_density("gauss:0,1"); }), 0u);
    EXPECT_EQ(error_position([] { parse_density("uniform:0"); }), 8u);
    EXPECT_EQ(error_position([] { parse_density("plq:0:0.2,0.5"); }), 10u);
    EXPECT_EQ(error_position([] { parse_density("uniform:0,2.5x"); }), 13u);
}

TEST(ParseWeight, Grammar) {
    EXPECT_DOUBLE_EQ(parse_weight("avar:0.75").value(0.5), 4.0 / 3.0);
    EXPECT_DOUBLE_EQ(parse_weight("twolevel:0.6,0.5").value(0.7), 1.75);
    EXPECT_DOUBLE_EQ(parse_weight("steps:0:0.5,0.5:1.5").value(0.6), 1.5);
    EXPECT_DOUBLE_EQ(parse_weight("affine:2").value(0.3), 0.6);
    EXPECT_DOUBLE_EQ(parse_weight("const").value(0.3), 1.0);
    EXPECT_EQ(error_position([] { parse_weight("steps:0:0.5,0.5"); }), 12u);
    EXPECT_EQ(error_position([] { parse_weight("avar:0"); }), 5u);
}

TEST(ParseLoss, Grammar) {
    EXPECT_EQ(parse_loss("exp:1").describe(), "exp:1");
    EXPECT_EQ(parse_loss("pow:2").describe(), "pow:2");
    const auto s = parse_loss("exp:1@0.5");
    EXPECT_DOUBLE_EQ(s.shift(), 0.5);
    EXPECT_NEAR(s.value(0.5), 1.0, 1e-15);
    EXPECT_THROW(parse_loss("pow:0.5"), SpecError);
    EXPECT_THROW(parse_loss("log:1"), SpecError);
}

TEST(ParseMeasure, Grammar) {
    EXPECT_EQ(parse_measure("avar:0.75").kind, MeasureSpec::Kind::Avar);
    EXPECT_EQ(parse_measure("var:0.25").kind, MeasureSpec::Kind::Var);
    const auto r = parse_measure("rho_k:twolevel:0.6,0.5");
    EXPECT_EQ(r.kind, MeasureSpec::Kind::RhoK);
    ASSERT_TRUE(r.weight);
    const auto rb = parse_measure("robust:0.5:exp:1");
    EXPECT_EQ(rb.kind, MeasureSpec::Kind::Robust);
    EXPECT_DOUBLE_EQ(rb.lambda, 0.5);
    const auto sh = parse_measure("shifted:0.5:2:exp:1");
    EXPECT_DOUBLE_EQ(sh.x0, 2.0);
    EXPECT_EQ(error_position([] { parse_measure("rho_k:twolevel:0.6,z"); }), 19u);
    EXPECT_EQ(error_position([] { parse_measure("robust:0.5:cubic:1"); }), 11u);
}

TEST(ParseGrid, Grammar) {
    const auto g = parse_grid("0:1:11");
    ASSERT_EQ(g.size(), 11u);
    EXPECT_DOUBLE_EQ(g[3], 0.3);
    EXPECT_DOUBLE_EQ(g.back(), 1.0);
    EXPECT_THROW(parse_grid("0:1:1"), SpecError);
    EXPECT_THROW(parse_grid("1:0:3"), SpecError);
    EXPECT_THROW(parse_grid("0:1"), SpecError);
}

TEST(FormatNumber, Digits) {
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(0.6), "0.6");
    EXPECT_EQ(format_number(std::nan("")), "NA");
}

TEST(Json, PayoffRoundTrip) {
    const auto d = PriceDensity::uniform(0.0, 2.0);
    const std::vector<Payoff> cases{
        Payoff::constant(0.4), Payoff::two_step(0.6, 0.0, 1.0),
        Payoff::capped_inverse(0.12, 0.7, 0.9, 1.0, LossFunction::exponential(1.0), 0.5),
        Payoff::step_vector({0.5, 1.2}, {0.0, 0.3, 1.0}), Payoff::two_step(0.2, 0.3, 1.1).plus(0.1)};
    for (const auto& p : cases) {
        const auto back = payoff_from_json(nlohmann::json::parse(to_json(p).dump()));
        EXPECT_EQ(back.kind(), p.kind());
        for (int i = 0; i <= 100; ++i) EXPECT_NEAR(back(0.02 * i), p(0.02 * i), 1e-12);
        EXPECT_NEAR(price(back, d), price(p, d), 1e-12);
    }
}

TEST(Json, SolutionRoundTrip) {
    const auto d = PriceDensity::uniform(0.0, 2.0);
    ProblemSpec spec{MeasureSpec::robust(0.75, LossFunction::exponential(1.0)), d, 0.8, 1.0, {}};
    const auto s = solve(spec);
    const auto j = to_json(s, "uniform:0,2");
    for (const char* key : {"measure", "params", "regime", "risk", "budget_residual", "critical_value",
                            "payoff", "diagnostics"})
        EXPECT_TRUE(j.contains(key)) << key;
    const auto back = solution_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_NEAR(price(back.payoff, d), price(s.payoff, d), 1e-12);
    EXPECT_NEAR(evaluate_risk(spec.measure, back.payoff, d), s.risk, 1e-12);
    EXPECT_EQ(back.regime, s.regime);
    EXPECT_EQ(back.params, s.params);
}

TEST(Json, VerificationReportFields) {
    VerificationReport r;
    r.gap = 1e-4;
    r.pass = true;
    const auto j = to_json(r);
    for (const char* key : {"solver_risk", "oracle_risk", "gap", "n_atoms", "payoff_distance", "pass"})
        EXPECT_TRUE(j.contains(key)) << key;
    CurveCheck c;
    c.convexity_checked = false;
    EXPECT_EQ(to_json(c)["convex"], "skipped (non-convex measure)");
}
