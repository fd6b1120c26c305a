#include <algorithm>
#include <cmath>

#include "riskclaim/errors.hpp"
#include "riskclaim/risk_measures.hpp"

namespace riskclaim {

QuantileTable QuantileTable::from_knots(std::vector<QuantileKnot> knots) {
    if (knots.size() < 2 || knots.front().t != 0.0 || knots.back().t != 1.0) {
        fail(ErrorKind::InvalidParameter, "quantile table must span levels 0 to 1");
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (knots[i].t < knots[i - 1].t) fail(ErrorKind::InvalidParameter, "table levels must be nondecreasing");
        if (knots[i].q < knots[i - 1].q) fail(ErrorKind::InvalidParameter, "quantile table is decreasing");
    }
    QuantileTable t;
    t.knots_ = std::move(knots);
    return t;
}

QuantileTable QuantileTable::from_atoms(const std::vector<double>& values, const std::vector<double>& probs) {
    if (values.empty() || values.size() != probs.size()) {
        fail(ErrorKind::InvalidParameter, "atoms need matching values and probabilities");
    }
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    std::vector<QuantileKnot> knots;
    double c = 0.0;
    for (std::size_t r = 0; r < order.size(); ++r) {
        const std::size_t i = order[r];
        const double next = r + 1 == order.size() ? 1.0 : c + probs[i];
        knots.push_back({c, values[i]});
        knots.push_back({next, values[i]});
        c = next;
    }
    return from_knots(std::move(knots));
}

std::pair<double, double> QuantileTable::segment(double t) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double v, const QuantileKnot& k) { return v < k.t; });
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    i = std::clamp<std::size_t>(i, 1, knots_.size() - 1);
    const auto& a = knots_[i - 1];
    const auto& b = knots_[i];
    if (b.t == a.t) return {a.q, 0.0};
    const double slope = (b.q - a.q) / (b.t - a.t);
    return {a.q - slope * a.t, slope};
}

namespace {

// Exact integral of a product of two tables, the first optionally reflected t -> 1 - t.
double product_integral(const QuantileTable& x, const QuantileTable& y, bool reflect) {
    std::vector<double> cuts;
    for (const auto& k : y.knots()) cuts.push_back(k.t);
    for (const auto& k : x.knots()) cuts.push_back(reflect ? 1.0 - k.t : k.t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (!(b > a)) continue;
        const double m = 0.5 * (a + b);
        const auto [yi, ys] = y.segment(m);
        const auto [xi, xs] = x.segment(reflect ? 1.0 - m : m);
        auto fx = [&](double t) { return xi + xs * (reflect ? 1.0 - t : t); };
        auto fy = [&](double t) { return yi + ys * t; };
        sum += (b - a) / 6.0 * (fx(a) * fy(a) + 4.0 * fx(m) * fy(m) + fx(b) * fy(b));
    }
    return sum;
}

}  // namespace

HardyLittlewood hardy_littlewood_bounds(const QuantileTable& qx, const QuantileTable& qy) {
    return {product_integral(qx, qy, true), product_integral(qx, qy, false)};
}

}  // namespace riskclaim
