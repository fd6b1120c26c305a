#include <algorithm>
#include <cmath>
#include <limits>

#include "riskclaim/errors.hpp"
#include "riskclaim/risk_measures.hpp"
#include "riskclaim/solvers.hpp"

namespace riskclaim {

namespace {

void check_budget(double v, double cap) {
    if (!(v >= 0.0 && v <= cap)) fail(ErrorKind::InvalidParameter, "budget must lie in [0, cap]");
}

Solution degenerate(const char* measure, double v, double cap, double risk) {
    Solution s;
    s.measure = measure;
    s.payoff = Payoff::constant(v);
    s.budget = v;
    s.cap = cap;
    s.risk = risk;
    s.regime = Regime::Boundary;
    return s;
}

}  // namespace

double y_lambda(const PriceDensity& d, double lambda) {
    require_continuous(d, "y_lambda");
    if (!(lambda > 0.0 && lambda < 1.0)) fail(ErrorKind::InvalidParameter, "lambda must lie in (0,1)");
    if (d.ess_sup() <= 1.0 / lambda) return 1.0;
    auto h = [&](double y) { return d.quantile(y) * (y + lambda - 1.0) - d.capital_integral(y); };
    double hi = 1.0;
    if (!d.bounded()) {
        hi = 1.0 - 1e-3;
        while (h(hi) <= 0.0 && hi < 1.0 - 1e-15) hi = 1.0 - (1.0 - hi) * 1e-2;
    }
    return numerics::root_bracketed(h, {1.0 - lambda, hi}, 1e-14);
}

Solution solve_avar(const PriceDensity& d, double lambda, double v) {
    require_continuous(d, "solve_avar");
    if (!(lambda > 0.0 && lambda <= 1.0)) fail(ErrorKind::InvalidParameter, "lambda must lie in (0,1]");
    check_budget(v, 1.0);
    if (v == 0.0) return degenerate("avar", 0.0, 1.0, 0.0);
    if (v == 1.0) return degenerate("avar", 1.0, 1.0, 1.0);

    Solution s;
    s.measure = "avar";
    s.budget = v;
    // For lambda = 1, y/Phi(y) is largest as y -> 0, so every budget is classical.
    const double y = lambda < 1.0 ? y_lambda(d, lambda) : 0.0;
    const double phi_y = d.capital_integral(y);
    const double v_lambda = 1.0 - phi_y;
    const double c_lambda = phi_y > 0.0 ? (y + lambda - 1.0) / phi_y
                                        : 1.0 / d.quantile(std::numeric_limits<double>::min());
    s.critical_value = v_lambda;
    s.params["y_lambda"] = y;
    s.params["C_lambda"] = c_lambda;

    double formula;
    if (v <= v_lambda) {
        const double z = z_of_v(d, v);
        const double b0 = d.quantile(z);
        s.payoff = Payoff::two_step(0.0, b0, b0);
        s.regime = Regime::Classical;
        s.params["beta"] = 0.0;
        s.params["z_v"] = z;
        s.params["a"] = b0;
        s.params["b"] = b0;
        formula = (1.0 - z) / lambda;
    } else {
        const double beta = (v - 1.0 + phi_y) / phi_y;
        const double b1 = d.quantile(y);
        s.payoff = Payoff::two_step(beta, 0.0, b1);
        s.regime = Regime::Diversified;
        s.params["beta"] = beta;
        s.params["a"] = 0.0;
        s.params["b"] = b1;
        formula = 1.0 - c_lambda * (1.0 - v) / lambda;
    }
    s.risk = avar_risk(lambda, s.payoff, d);
    s.budget_residual = std::abs(price(s.payoff, d) - v);
    s.diagnostics["risk_formula"] = formula;
    return s;
}

double huber_strassen_pi(const PriceDensity& d, double lambda, double x) {
    require_continuous(d, "huber_strassen_pi");
    if (!(lambda > 0.0 && lambda < 1.0)) fail(ErrorKind::InvalidParameter, "lambda must lie in (0,1)");
    if (!(x >= 0.0)) fail(ErrorKind::InvalidParameter, "x must be >= 0");
    if (d.ess_sup() <= 1.0 / lambda) {
        fail(ErrorKind::InvalidParameter, "density is not large enough: ess sup <= 1/lambda");
    }
    return lambda * std::max(x, d.quantile(y_lambda(d, lambda)));
}

}  // namespace riskclaim
