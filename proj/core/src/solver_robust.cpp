#include <algorithm>
#include <cmath>
#include <limits>

#include "riskclaim/errors.hpp"
#include "riskclaim/risk_measures.hpp"
#include "riskclaim/solvers.hpp"

namespace riskclaim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tail problem for a fixed floor beta: on {phi >= q} the claim is
// clamp(I(c phi), beta, cap), below q it equals beta.
struct RobustProblem {
    const PriceDensity& d;
    const LossFunction& loss;
    double lambda, v, cap;
    Tolerances tol;
    double s, q, lower_capital, tail, beta_min;

    RobustProblem(const PriceDensity& d_, const LossFunction& loss_, double lambda_, double v_,
                  double cap_, const Tolerances& tol_)
        : d(d_), loss(loss_), lambda(lambda_), v(v_), cap(cap_), tol(tol_) {
        s = 1.0 - lambda;
        q = lambda < 1.0 ? d.quantile(s) : 0.0;
        lower_capital = d.capital_integral(s);
        tail = d.mean() - lower_capital;
        beta_min = lower_capital > 0.0 ? std::max(0.0, (v - cap * tail) / lower_capital) : 0.0;
        if (v > cap * tail + cap * lower_capital) fail(ErrorKind::Infeasible, "budget exceeds cap");
    }

    Payoff claim(double beta, double c) const {
        return Payoff::capped_inverse(beta, c, loss.derivative(beta) / c, cap, loss, q);
    }

    double tail_price(const Payoff& f) const {
        return level_integral(d, f, LevelWeight::capital(d), {}, s, 1.0, tol.inner_tol);
    }

    double tail_loss(const Payoff& f) const {
        auto g = [this](double x) { return loss.value(x); };
        return level_integral(d, f, LevelWeight::lebesgue(), g, s, 1.0, tol.inner_tol);
    }

    bool at_top(double beta) const { return v - beta <= 1e-15 * std::max(1.0, v); }
    // The whole tail sits at the cap.
    bool at_bottom(double beta) const { return v - beta * lower_capital >= cap * tail * (1.0 - 1e-15); }

    // log c solving the tail budget for this floor.
    double log_scale(double beta) const {
        const double target = v - beta * lower_capital;
        auto r = [&](double lc) { return tail_price(claim(beta, std::exp(lc))) - target; };
        double lo = -1.0, hi = 1.0, step = 2.0;
        while (r(lo) >= 0.0) {
            hi = lo;
            lo -= step;
            step *= 2.0;
            if (lo < -700.0) fail(ErrorKind::NoBracket, "no scale c attains the tail budget (lower)");
        }
        step = 2.0;
        while (r(hi) <= 0.0) {
            lo = hi;
            hi += step;
            step *= 2.0;
            if (hi > 700.0) fail(ErrorKind::NoBracket, "no scale c attains the tail budget (upper)");
        }
        return numerics::root_bracketed(r, {lo, hi}, 1e-13);
    }

    double objective(double beta) const {
        if (at_top(beta)) return lambda * loss.value(v);
        if (at_bottom(beta)) return lambda * loss.value(cap);
        return tail_loss(claim(beta, std::exp(log_scale(beta))));
    }
};

}  // namespace

Solution solve_robust_utility(const PriceDensity& d, const LossFunction& loss, double lambda, double v,
                              double cap, const Tolerances& tol) {
    require_continuous(d, "solve_robust_utility");
    if (!(lambda > 0.0 && lambda <= 1.0)) fail(ErrorKind::InvalidParameter, "lambda must lie in (0,1]");
    if (!(cap > 0.0)) fail(ErrorKind::InvalidParameter, "cap must be positive");
    if (!(v >= 0.0 && v <= cap)) fail(ErrorKind::InvalidParameter, "budget must lie in [0, cap]");

    Solution s;
    s.measure = "robust";
    s.budget = v;
    s.cap = cap;
    if (v == 0.0 || v == cap) {
        s.payoff = Payoff::constant(v);
        s.risk = loss.value(v);
        s.regime = Regime::Boundary;
        s.params["beta"] = v;
        return s;
    }

    const RobustProblem P(d, loss, lambda, v, cap, tol);
    auto L = [&](double beta) { return P.objective(beta); };
    auto best = numerics::minimize_1d(L, P.beta_min, v, 1e-10);
    std::size_t evals = best.evaluations;
    if (best.multimodal) {
        const double width = v - P.beta_min;
        const auto n = static_cast<std::size_t>(std::min(1000.0, std::ceil(width / 1e-3))) + 1;
        const double h = width / static_cast<double>(n - 1);
        double bx = best.x, bf = best.fx;
        for (std::size_t i = 0; i < n; ++i) {
            const double b = i + 1 == n ? v : P.beta_min + h * static_cast<double>(i);
            const double f = L(b);
            if (f < bf) {
                bf = f;
                bx = b;
            }
        }
        const auto local = numerics::minimize_1d(L, std::max(P.beta_min, bx - h), std::min(v, bx + h), 1e-10);
        best = local.fx < bf ? local : numerics::Min1DResult{bx, bf, true, 0};
        evals += n + local.evaluations;
        s.diagnostics["dense_scan"] = 1.0;
    }

    // L can be flat to first order at either end; an endpoint within the tie tolerance wins,
    // the lower one first.
    const double tie = 1e-10 * std::max(1.0, std::abs(best.fx));
    if (best.x > P.beta_min) {
        const double f0 = L(P.beta_min);
        if (f0 - best.fx <= tie) best = {P.beta_min, f0, best.multimodal, 0};
    }
    if (best.x > P.beta_min && best.x < v) {
        const double f1 = L(v);
        if (f1 - best.fx <= tie) best = {v, f1, best.multimodal, 0};
    }
    const double beta = best.x;
    double c, y;
    if (P.at_top(beta)) {
        s.payoff = Payoff::constant(v);
        y = d.ess_sup();
        c = std::isfinite(y) ? loss.derivative(v) / y : 0.0;
    } else if (P.at_bottom(beta)) {
        s.payoff = Payoff::two_step(beta, 0.0, P.q, cap);
        c = kInf;
        y = P.q;
    } else {
        c = std::exp(P.log_scale(beta));
        s.payoff = P.claim(beta, c);
        y = s.payoff.y();
    }

    s.regime = beta <= tol.beta_tol ? Regime::Classical : Regime::Diversified;
    s.params["beta"] = beta;
    if (std::isfinite(c)) s.params["c"] = c;
    if (std::isfinite(y)) s.params["y"] = y;
    s.params["q"] = P.q;
    s.params["beta_min"] = P.beta_min;
    s.risk = robust_risk(loss, lambda, s.payoff, d);
    s.budget_residual = std::abs(price(s.payoff, d) - v);
    s.diagnostics["objective"] = best.fx / lambda;
    s.diagnostics["evaluations"] = static_cast<double>(evals);
    s.diagnostics["multimodal"] = best.multimodal ? 1.0 : 0.0;
    return s;
}

CriticalValue critical_value_robust(const PriceDensity& d, const LossFunction& loss, double lambda,
                                    double cap, const Tolerances& tol) {
    require_continuous(d, "critical_value_robust");
    if (!(lambda > 0.0 && lambda < 1.0)) {
        fail(ErrorKind::InvalidParameter, "critical value exists only for lambda in (0,1)");
    }
    const double bound = cap * d.tail_capital(d.quantile(1.0 - lambda));
    auto diversified = [&](double v) {
        return solve_robust_utility(d, loss, lambda, v, cap, tol).params.at("beta") > 1e-7;
    };
    double lo = 0.0, hi = bound;
    if (!diversified(hi)) return {bound, bound, bound, false};
    while (hi - lo > 1e-5) {
        const double mid = 0.5 * (lo + hi);
        (diversified(mid) ? hi : lo) = mid;
    }
    return {0.5 * (lo + hi), lo, hi, true};
}

Solution solve_shifted(const PriceDensity& d, const LossFunction& loss, double lambda, double v,
                       double x0, double cap, const Tolerances& tol) {
    require_continuous(d, "solve_shifted");
    if (!loss.defined_on_reals()) fail(ErrorKind::InvalidParameter, "shifted problem needs a loss on all reals");
    if (!(cap > 0.0)) fail(ErrorKind::InvalidParameter, "cap must be positive");
    if (!(v >= 0.0 && v <= cap)) fail(ErrorKind::InvalidParameter, "budget must lie in [0, cap]");

    Solution s;
    s.measure = "shifted";
    s.budget = v;
    s.cap = cap;
    if (v == 0.0 || v == cap) {
        s.payoff = Payoff::constant(v);
        s.risk = shifted_risk(loss, lambda, x0, s.payoff, d, tol.bracket_margin);
        s.regime = Regime::Boundary;
        s.params["alpha"] = v;
        s.params["R"] = s.risk;
        return s;
    }

    const double zc = z_of_v(d, v / cap);
    const double b = d.quantile(zc);
    double R = shifted_risk(loss, lambda, x0, Payoff::two_step(0.0, b, b, cap), d, tol.bracket_margin);
    s.diagnostics["R0"] = R;

    Solution inner;
    double step = 0.0;
    std::size_t it = 0;
    bool converged = false;
    while (it < tol.fixed_point_max_iter) {
        ++it;
        inner = solve_robust_utility(d, loss.shifted(R), lambda, v, cap, tol);
        const double next = shifted_risk(loss, lambda, x0, inner.payoff, d, tol.bracket_margin);
        step = tol.damping * (next - R);
        R += step;
        if (std::abs(step) <= tol.fixed_point_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        fail(ErrorKind::NonConvergence,
             "fixed point did not converge in " + std::to_string(it) + " iterations, last step " +
                 std::to_string(step));
    }

    s.payoff = inner.payoff;
    s.regime = inner.regime;
    s.risk = shifted_risk(loss, lambda, x0, s.payoff, d, tol.bracket_margin);
    s.budget_residual = inner.budget_residual;
    s.params["alpha"] = inner.params.at("beta");
    if (inner.params.count("c")) s.params["gamma"] = inner.params.at("c");
    if (inner.params.count("y")) s.params["z"] = inner.params.at("y");
    s.params["R"] = s.risk;
    s.diagnostics["iterations"] = static_cast<double>(it);
    s.diagnostics["fixed_point_residual"] = std::abs(step);
    s.diagnostics["R_iterate"] = R;
    return s;
}

}  // namespace riskclaim
