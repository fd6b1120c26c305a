#include <algorithm>
#include <cmath>
#include <limits>

#include "riskclaim/errors.hpp"
#include "riskclaim/numerics.hpp"
#include "riskclaim/risk_measures.hpp"

namespace riskclaim {

LevelWeight LevelWeight::lebesgue() {
    return {[](double t) { return t; }, [](double) { return 1.0; }, {}};
}

LevelWeight LevelWeight::capital(const PriceDensity& d) {
    return {[&d](double t) { return d.capital_integral(t); },
            [&d](double t) { return d.quantile(t); }, d.level_breaks()};
}

LevelWeight LevelWeight::weight(const WeightFunction& k) {
    return {[&k](double t) { return k.gamma(t); }, [&k](double t) { return k.value(t); }, k.breaks()};
}

double level_integral(const PriceDensity& d, const Payoff& f, const LevelWeight& w,
                      const std::function<double(double)>& g, double t_lo, double t_hi,
                      double tol) {
    auto apply = [&](double v) { return g ? g(v) : v; };
    t_lo = std::clamp(t_lo, 0.0, 1.0);
    t_hi = std::clamp(t_hi, 0.0, 1.0);
    if (!(t_hi > t_lo)) return 0.0;

    double sum = 0.0;
    if (d.is_discrete()) {
        const auto& atoms = d.atoms();
        double c0 = 0.0;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            double c1 = c0 + atoms[i].prob;
            if (i + 1 == atoms.size() && std::abs(c1 - 1.0) < 1e-9) c1 = 1.0;
            const double lo = std::max(c0, t_lo), hi = std::min(c1, t_hi);
            if (hi > lo) sum += apply(f.value(atoms[i].value)) * (w.cumulative(hi) - w.cumulative(lo));
            c0 = c1;
        }
        return sum;
    }

    std::vector<double> breaks = d.level_breaks();
    breaks.insert(breaks.end(), w.breaks.begin(), w.breaks.end());
    for (const auto& piece : f.pieces()) {
        const double u0 = piece.lo <= 0.0 ? 0.0 : d.cdf_left(piece.lo);
        const double u1 = std::isinf(piece.hi) ? 1.0 : d.cdf_left(piece.hi);
        const double lo = std::max(u0, t_lo), hi = std::min(u1, t_hi);
        if (!(hi > lo)) continue;
        if (piece.constant) {
            sum += apply(piece.level) * (w.cumulative(hi) - w.cumulative(lo));
        } else {
            numerics::QuadOptions opt;
            opt.tol = tol;
            opt.breakpoints = breaks;
            sum += numerics::integrate_adaptive(
                [&](double t) { return apply(f.value(d.quantile(t))) * w.density(t); }, lo, hi, opt);
        }
    }
    return sum;
}

}  // namespace riskclaim
