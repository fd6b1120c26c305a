#include "riskclaim/risk_measures.hpp"

#include <algorithm>
#include <cmath>

#include "riskclaim/errors.hpp"
#include "riskclaim/numerics.hpp"

namespace riskclaim {

namespace {

void check_level(double lambda, bool allow_one) {
    const bool ok = allow_one ? (lambda > 0.0 && lambda <= 1.0) : (lambda > 0.0 && lambda < 1.0);
    if (!ok) fail(ErrorKind::InvalidParameter, allow_one ? "lambda must lie in (0,1]" : "lambda must lie in (0,1)");
}

}  // namespace

double price(const Payoff& f, const PriceDensity& d) {
    return level_integral(d, f, LevelWeight::capital(d));
}

double expectation(const Payoff& f, const PriceDensity& d) {
    return level_integral(d, f, LevelWeight::lebesgue());
}

double avar_risk(double lambda, const Payoff& f, const PriceDensity& d) {
    check_level(lambda, true);
    return level_integral(d, f, LevelWeight::lebesgue(), {}, 1.0 - lambda, 1.0) / lambda;
}

double quantile_risk(const WeightFunction& k, const Payoff& f, const PriceDensity& d) {
    return level_integral(d, f, LevelWeight::weight(k));
}

double robust_risk(const LossFunction& loss, double lambda, const Payoff& f, const PriceDensity& d) {
    check_level(lambda, true);
    require_continuous(d, "robust_risk");
    auto g = [&loss](double x) { return loss.value(x); };
    return level_integral(d, f, LevelWeight::lebesgue(), g, 1.0 - lambda, 1.0) / lambda;
}

double shifted_risk(const LossFunction& loss, double lambda, double x0, const Payoff& f,
                    const PriceDensity& d, double bracket_margin) {
    check_level(lambda, true);
    require_continuous(d, "shifted_risk");
    if (!loss.defined_on_reals()) {
        fail(ErrorKind::InvalidParameter, "shifted risk needs a loss defined on all reals");
    }
    if (!(x0 > 0.0) || !std::isfinite(x0)) {
        fail(ErrorKind::InvalidParameter, "x0 must be interior to the range of the loss");
    }
    auto excess = [&](double m) {
        const LossFunction lm = loss.shifted(m);
        auto g = [&lm](double x) { return lm.value(x); };
        return level_integral(d, f, LevelWeight::lebesgue(), g, 1.0 - lambda, 1.0) / lambda - x0;
    };
    const double lo = std::min(0.0, f.value(0.0)) - bracket_margin;
    const double hi = std::max(f.cap(), 0.0) + std::max(0.0, f.offset()) + bracket_margin;
    try {
        return numerics::root_bracketed(excess, {lo, hi}, 1e-13);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NoBracket) fail(ErrorKind::BracketFailure, e.what());
        throw;
    }
}

double var_risk(double lambda, const Payoff& f, const PriceDensity& d) {
    check_level(lambda, false);
    const double s = 1.0 - lambda;
    const double x = d.quantile_lower(s);
    if (d.cdf_left(x) < s - 1e-12) return f.value(x);
    if (d.is_discrete()) {
        const auto& atoms = d.atoms();
        auto it = std::lower_bound(atoms.begin(), atoms.end(), x,
                                   [](const Atom& a, double v) { return a.value < v; });
        if (it == atoms.begin()) return f.value(x);
        return f.value((it - 1)->value);
    }
    return f.left_limit(x);
}

double g_k_value(const PriceDensity& d, const WeightFunction& k, double x) {
    if (!(x >= 0.0)) fail(ErrorKind::InvalidParameter, "x must be >= 0");
    const double hi = d.cdf(x);
    const double lo = d.cdf_left(x);
    if (hi - lo > 1e-15) return (k.gamma(hi) - k.gamma(lo)) / (hi - lo);
    return k.value(hi);
}

}  // namespace riskclaim
