#include <algorithm>
#include <cmath>
#include <tuple>

#include "riskclaim/errors.hpp"
#include "riskclaim/risk_measures.hpp"
#include "riskclaim/solvers.hpp"

namespace riskclaim {

Solution solve_quantile_based(const PriceDensity& d, const WeightFunction& k, double v,
                              const numerics::Min2DOptions& grid) {
    require_continuous(d, "solve_quantile_based");
    if (!(v >= 0.0 && v <= 1.0)) fail(ErrorKind::InvalidParameter, "budget must lie in [0,1]");

    Solution s;
    s.measure = "rho_k";
    s.budget = v;
    if (v == 0.0 || v == 1.0) {
        s.payoff = Payoff::constant(v);
        s.risk = v;
        s.regime = Regime::Boundary;
        return s;
    }

    const double z = z_of_v(d, v);
    const double corner = 1.0 - k.gamma(z);
    // R on the closed box [0,z] x [z,1]; the edges x = z and y = z give the corner claim.
    auto R = [&](double x, double y) {
        if (x >= z || y <= z) return corner;
        const double px = d.capital_integral(x), py = d.capital_integral(y);
        const double beta = (v - 1.0 + py) / (py - px);
        return beta * (k.gamma(y) - k.gamma(x)) + 1.0 - k.gamma(y);
    };

    const auto res = numerics::minimize_2d(R, {0.0, z, z, 1.0}, grid);
    std::vector<numerics::Point2D> cands{{res.x, res.y, res.f}, {z, z, corner}};
    const auto along_x = numerics::minimize_1d([&](double x) { return R(x, 1.0); }, 0.0, z, 1e-12);
    cands.push_back({along_x.x, 1.0, along_x.fx});
    const auto along_y = numerics::minimize_1d([&](double y) { return R(0.0, y); }, z, 1.0, 1e-12);
    cands.push_back({0.0, along_y.x, along_y.fx});

    double best_f = cands.front().f;
    for (const auto& c : cands) best_f = std::min(best_f, c.f);
    const double tie = res.flat ? grid.flat_tol : 1e-12;
    numerics::Point2D best{2.0, 2.0, best_f};
    for (const auto& c : cands) {
        if (c.f <= best_f + tie && std::tie(c.x, c.y) < std::tie(best.x, best.y)) best = c;
    }

    const double x = best.x, y = best.y;
    const bool on_edge = x >= z || y <= z;
    double beta = 0.0;
    if (on_edge) {
        const double b = d.quantile(z);
        s.payoff = Payoff::two_step(0.0, b, b);
        s.params["a"] = b;
        s.params["b"] = b;
    } else {
        const double px = d.capital_integral(x), py = d.capital_integral(y);
        beta = std::clamp((v - 1.0 + py) / (py - px), 0.0, 1.0);
        const double a = d.quantile(x), b = d.quantile(y);
        s.payoff = Payoff::two_step(beta, a, b);
        s.params["a"] = a;
        s.params["b"] = b;
    }
    s.regime = (on_edge || beta <= 1e-12 || beta >= 1.0 - 1e-12) ? Regime::Classical : Regime::Diversified;
    s.params["x_star"] = x;
    s.params["y_star"] = y;
    s.params["beta_star"] = beta;
    s.params["z_v"] = z;
    s.risk = quantile_risk(k, s.payoff, d);
    s.budget_residual = std::abs(price(s.payoff, d) - v);
    s.diagnostics["objective"] = best.f;
    s.diagnostics["flat"] = res.flat ? 1.0 : 0.0;
    s.diagnostics["grid_range"] = res.range;
    s.diagnostics["evaluations"] = static_cast<double>(res.evaluations + along_x.evaluations + along_y.evaluations);
    s.diagnostics["near_minimizers"] = static_cast<double>(res.near_minimizers.size());
    s.minimizers = res.near_minimizers;
    return s;
}

}  // namespace riskclaim
