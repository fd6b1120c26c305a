#include <cmath>

#include "riskclaim/errors.hpp"
#include "riskclaim/risk_measures.hpp"
#include "riskclaim/solvers.hpp"

namespace riskclaim {

Solution solve_var(const PriceDensity& d, double lambda, double v) {
    require_continuous(d, "solve_var");
    if (!(lambda > 0.0 && lambda < 1.0)) fail(ErrorKind::InvalidParameter, "lambda must lie in (0,1)");
    if (!(v >= 0.0 && v <= 1.0)) fail(ErrorKind::InvalidParameter, "budget must lie in [0,1]");

    Solution s;
    s.measure = "var";
    s.budget = v;
    if (v == 0.0 || v == 1.0) {
        s.payoff = Payoff::constant(v);
        s.risk = v;
        s.regime = Regime::Boundary;
        s.params["r"] = v;
        return s;
    }

    const double level = 1.0 - lambda;
    const double q = d.quantile(level);
    const double tail = d.tail_capital(q);
    s.critical_value = tail;
    s.params["q"] = q;
    const double z = z_of_v(d, v);
    s.params["z_v"] = z;
    if (z > level) {
        const double b = d.quantile(z);
        s.payoff = Payoff::two_step(0.0, b, b);
        s.regime = Regime::Boundary;
        s.params["r"] = 0.0;
        s.params["b"] = b;
    } else {
        const double r = (v - tail) / (d.mean() - tail);
        s.payoff = Payoff::two_step(r, 0.0, q);
        s.regime = Regime::Diversified;
        s.params["r"] = r;
        s.params["b"] = q;
    }
    s.risk = var_risk(lambda, s.payoff, d);
    s.budget_residual = std::abs(price(s.payoff, d) - v);
    return s;
}

}  // namespace riskclaim
