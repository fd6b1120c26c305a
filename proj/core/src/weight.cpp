#include "riskclaim/weight.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "riskclaim/errors.hpp"

namespace riskclaim {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

WeightFunction WeightFunction::from_pieces(std::vector<Piece> pieces, std::string label) {
    if (pieces.empty() || pieces.front().start != 0.0) {
        fail(ErrorKind::InvalidParameter, "weight pieces must start at 0");
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& p = pieces[i];
        if (!std::isfinite(p.start) || !std::isfinite(p.intercept) || !std::isfinite(p.slope)) {
            fail(ErrorKind::InvalidParameter, "weight pieces must be finite");
        }
        if (p.start < 0.0 || p.start >= 1.0) fail(ErrorKind::InvalidParameter, "thresholds must lie in [0,1)");
        if (p.slope < 0.0) fail(ErrorKind::InvalidParameter, "weight must be nondecreasing");
        if (p.intercept + p.slope * p.start < 0.0) fail(ErrorKind::InvalidParameter, "weight must be >= 0");
        if (i > 0) {
            const auto& q = pieces[i - 1];
            if (!(p.start > q.start)) fail(ErrorKind::InvalidParameter, "thresholds must increase");
            const double left = q.intercept + q.slope * p.start;
            const double right = p.intercept + p.slope * p.start;
            if (right < left - 1e-14) fail(ErrorKind::InvalidParameter, "weight must be nondecreasing");
        }
    }
    WeightFunction w;
    w.pieces_ = std::move(pieces);
    w.label_ = std::move(label);
    w.gamma_at_start_.assign(w.pieces_.size(), 0.0);
    for (std::size_t i = 1; i < w.pieces_.size(); ++i) {
        const auto& q = w.pieces_[i - 1];
        const double a = q.start, b = w.pieces_[i].start;
        w.gamma_at_start_[i] = w.gamma_at_start_[i - 1] + q.intercept * (b - a) +
                               0.5 * q.slope * (b * b - a * a);
    }
    const double total = w.gamma(1.0);
    if (std::abs(total - 1.0) > 1e-12) {
        fail(ErrorKind::InvalidParameter, "weight must integrate to 1 (got " + fmt(total) + ")");
    }
    return w;
}

WeightFunction WeightFunction::avar(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) fail(ErrorKind::InvalidParameter, "lambda must lie in (0,1]");
    if (lambda == 1.0) return from_pieces({{0.0, 1.0, 0.0}}, "avar:1");
    return from_pieces({{0.0, 0.0, 0.0}, {1.0 - lambda, 1.0 / lambda, 0.0}}, "avar:" + fmt(lambda));
}

WeightFunction WeightFunction::two_level(double xi, double low) {
    if (!(xi > 0.0 && xi < 1.0)) fail(ErrorKind::InvalidParameter, "xi must lie in (0,1)");
    if (!(low >= 0.0 && low <= 1.0)) fail(ErrorKind::InvalidParameter, "low level must lie in [0,1]");
    const double high = (1.0 - low * xi) / (1.0 - xi);
    return from_pieces({{0.0, low, 0.0}, {xi, high, 0.0}},
                       "twolevel:" + fmt(xi) + "," + fmt(low));
}

WeightFunction WeightFunction::steps(const std::vector<std::pair<double, double>>& steps) {
    std::vector<Piece> pieces;
    std::string label = "steps:";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        pieces.push_back({steps[i].first, steps[i].second, 0.0});
        if (i) label += ",";
        label += fmt(steps[i].first) + ":" + fmt(steps[i].second);
    }
    return from_pieces(std::move(pieces), label);
}

WeightFunction WeightFunction::affine(double slope) {
    if (!(slope >= 0.0 && slope <= 2.0)) fail(ErrorKind::InvalidParameter, "affine slope must lie in [0,2]");
    return from_pieces({{0.0, 1.0 - 0.5 * slope, slope}}, "affine:" + fmt(slope));
}

double WeightFunction::value(double t) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](double v, const Piece& p) { return v < p.start; });
    if (it == pieces_.begin()) return pieces_.front().intercept;
    const auto& p = *(it - 1);
    return p.intercept + p.slope * t;
}

double WeightFunction::gamma(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::InvalidParameter, "level outside [0,1]");
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](double v, const Piece& p) { return v < p.start; });
    const auto i = static_cast<std::size_t>(it - pieces_.begin()) - 1;
    const auto& p = pieces_[i];
    return gamma_at_start_[i] + p.intercept * (x - p.start) + 0.5 * p.slope * (x * x - p.start * p.start);
}

double WeightFunction::average(double a, double b) const {
    if (b <= a) return value(a);
    return (gamma(b) - gamma(a)) / (b - a);
}

std::vector<double> WeightFunction::breaks() const {
    std::vector<double> out;
    for (const auto& p : pieces_) out.push_back(p.start);
    out.push_back(1.0);
    return out;
}

double gamma_value(const WeightFunction& k, double x) { return k.gamma(x); }

}  // namespace riskclaim
