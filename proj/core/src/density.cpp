#include "riskclaim/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "riskclaim/errors.hpp"
#include "riskclaim/numerics.hpp"

namespace riskclaim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_all(const std::vector<QuantileKnot>& k) {
    return std::all_of(k.begin(), k.end(),
                       [](const QuantileKnot& x) { return std::isfinite(x.t) && std::isfinite(x.q); });
}

}  // namespace

bool ValidationReport::has(const std::string& code) const {
    return std::any_of(issues.begin(), issues.end(),
                       [&](const ValidationIssue& i) { return i.code == code; });
}

PriceDensity PriceDensity::uniform(double lo, double hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || lo < 0.0 || !(hi > lo)) {
        fail(ErrorKind::InvalidParameter, "uniform density needs 0 <= lo < hi");
    }
    PriceDensity d = piecewise_linear({{0.0, lo}, {1.0, hi}});
    d.kind_ = Kind::Uniform;
    return d;
}

PriceDensity PriceDensity::piecewise_linear(std::vector<QuantileKnot> knots,
                                            std::optional<double> tail_scale) {
    if (knots.size() < (tail_scale ? 1u : 2u)) {
        fail(ErrorKind::InvalidParameter, "piecewise-linear quantile needs at least two knots");
    }
    if (!finite_all(knots)) fail(ErrorKind::InvalidParameter, "quantile knots must be finite");
    if (knots.front().t != 0.0) fail(ErrorKind::InvalidParameter, "first knot level must be 0");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (knots[i].t < knots[i - 1].t) {
            fail(ErrorKind::InvalidParameter, "knot levels must be nondecreasing");
        }
    }
    if (tail_scale) {
        if (!(*tail_scale > 0.0) || !std::isfinite(*tail_scale)) {
            fail(ErrorKind::InvalidParameter, "tail scale must be positive");
        }
        if (!(knots.back().t < 1.0)) fail(ErrorKind::InvalidParameter, "tail needs last level < 1");
    } else if (knots.back().t != 1.0) {
        fail(ErrorKind::InvalidParameter, "last knot level must be 1");
    }
    for (const auto& k : knots) {
        if (k.t < 0.0 || k.t > 1.0 || k.q < 0.0) {
            fail(ErrorKind::InvalidParameter, "knots need levels in [0,1] and values >= 0");
        }
    }

    PriceDensity d;
    d.kind_ = Kind::PiecewiseLinearQuantile;
    d.knots_ = std::move(knots);
    d.tail_scale_ = tail_scale;
    d.phi_.assign(d.knots_.size(), 0.0);
    d.continuous_ = true;
    for (std::size_t i = 1; i < d.knots_.size(); ++i) {
        const auto& a = d.knots_[i - 1];
        const auto& b = d.knots_[i];
        d.phi_[i] = d.phi_[i - 1] + 0.5 * (b.t - a.t) * (a.q + b.q);
        if (b.t > a.t && b.q == a.q) d.continuous_ = false;
    }
    return d;
}

PriceDensity PriceDensity::discrete(std::vector<Atom> atoms) {
    if (atoms.empty()) fail(ErrorKind::InvalidParameter, "discrete density needs atoms");
    for (const auto& a : atoms) {
        if (!std::isfinite(a.value) || !std::isfinite(a.prob)) {
            fail(ErrorKind::InvalidParameter, "atoms must be finite");
        }
    }
    for (std::size_t i = 1; i < atoms.size(); ++i) {
        if (atoms[i].value < atoms[i - 1].value) {
            fail(ErrorKind::InvalidParameter, "atoms must be sorted ascending by value");
        }
    }
    PriceDensity d;
    d.kind_ = Kind::EmpiricalDiscrete;
    d.continuous_ = false;
    for (const auto& a : atoms) {
        if (!d.atoms_.empty() && d.atoms_.back().value == a.value) {
            d.atoms_.back().prob += a.prob;
        } else {
            d.atoms_.push_back(a);
        }
    }
    double c = 0.0, m = 0.0;
    for (const auto& a : d.atoms_) {
        c += a.prob;
        m += a.prob * a.value;
        d.cum_.push_back(c);
        d.phi_.push_back(m);
    }
    return d;
}

double PriceDensity::cdf(double x) const {
    if (is_discrete()) {
        auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x,
                                   [](double v, const Atom& a) { return v < a.value; });
        const auto k = static_cast<std::size_t>(it - atoms_.begin());
        return k == 0 ? 0.0 : std::min(1.0, cum_[k - 1]);
    }
    if (x < knots_.front().q) return 0.0;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double v, const QuantileKnot& k) { return v < k.q; });
    const auto i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    if (i + 1 == knots_.size()) {
        if (!tail_scale_) return 1.0;
        const auto& m = knots_.back();
        return 1.0 - (1.0 - m.t) * std::exp(-(x - m.q) / *tail_scale_);
    }
    const auto& a = knots_[i];
    const auto& b = knots_[i + 1];
    return a.t + (b.t - a.t) * (x - a.q) / (b.q - a.q);
}

double PriceDensity::cdf_left(double x) const {
    if (is_discrete()) {
        auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                                   [](const Atom& a, double v) { return a.value < v; });
        const auto k = static_cast<std::size_t>(it - atoms_.begin());
        return k == 0 ? 0.0 : std::min(1.0, cum_[k - 1]);
    }
    auto it = std::lower_bound(knots_.begin(), knots_.end(), x,
                               [](const QuantileKnot& k, double v) { return k.q < v; });
    const auto j = static_cast<std::size_t>(it - knots_.begin());
    if (j == 0) return 0.0;
    if (j == knots_.size()) {
        if (!tail_scale_) return 1.0;
        const auto& m = knots_.back();
        return 1.0 - (1.0 - m.t) * std::exp(-(x - m.q) / *tail_scale_);
    }
    const auto& a = knots_[j - 1];
    const auto& b = knots_[j];
    return a.t + (b.t - a.t) * (x - a.q) / (b.q - a.q);
}

double PriceDensity::quantile(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::InvalidParameter, "quantile level outside [0,1]");
    if (t == 0.0) return 0.0;
    if (t == 1.0) return ess_sup();
    if (is_discrete()) {
        auto it = std::upper_bound(cum_.begin(), cum_.end(), t);
        if (it == cum_.end()) return atoms_.back().value;
        return atoms_[static_cast<std::size_t>(it - cum_.begin())].value;
    }
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double v, const QuantileKnot& k) { return v < k.t; });
    const auto i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    if (i + 1 == knots_.size()) {
        const auto& m = knots_.back();
        return m.q - *tail_scale_ * std::log((1.0 - t) / (1.0 - m.t));
    }
    const auto& a = knots_[i];
    const auto& b = knots_[i + 1];
    return a.q + (b.q - a.q) * (t - a.t) / (b.t - a.t);
}

double PriceDensity::quantile_lower(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::InvalidParameter, "quantile level outside [0,1]");
    if (is_discrete()) {
        auto it = std::lower_bound(cum_.begin(), cum_.end(), t);
        if (it == cum_.end()) return atoms_.back().value;
        return atoms_[static_cast<std::size_t>(it - cum_.begin())].value;
    }
    if (t == 1.0) return ess_sup();
    auto it = std::lower_bound(knots_.begin(), knots_.end(), t,
                               [](const QuantileKnot& k, double v) { return k.t < v; });
    const auto j = static_cast<std::size_t>(it - knots_.begin());
    if (j == knots_.size()) {
        const auto& m = knots_.back();
        return m.q - *tail_scale_ * std::log((1.0 - t) / (1.0 - m.t));
    }
    if (knots_[j].t == t || j == 0) return knots_[j].q;
    const auto& a = knots_[j - 1];
    const auto& b = knots_[j];
    return a.q + (b.q - a.q) * (t - a.t) / (b.t - a.t);
}

double PriceDensity::capital_integral(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::InvalidParameter, "capital level outside [0,1]");
    if (is_discrete()) {
        auto it = std::lower_bound(cum_.begin(), cum_.end(), x);
        if (it == cum_.end()) return phi_.back();
        const auto k = static_cast<std::size_t>(it - cum_.begin());
        const double prev_c = k == 0 ? 0.0 : cum_[k - 1];
        const double prev_p = k == 0 ? 0.0 : phi_[k - 1];
        return prev_p + atoms_[k].value * (x - prev_c);
    }
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double v, const QuantileKnot& k) { return v < k.t; });
    const auto i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    if (i + 1 == knots_.size()) {
        if (!tail_scale_) return phi_.back();
        const auto& m = knots_.back();
        const double s = 1.0 - m.t;
        const double u = (1.0 - x) / s;
        const double ulogu = u > 0.0 ? u * std::log(u) : 0.0;
        return phi_.back() + m.q * (x - m.t) + *tail_scale_ * s * (1.0 - u + ulogu);
    }
    const auto& a = knots_[i];
    const auto& b = knots_[i + 1];
    const double qx = a.q + (b.q - a.q) * (x - a.t) / (b.t - a.t);
    return phi_[i] + 0.5 * (x - a.t) * (a.q + qx);
}

double PriceDensity::mean() const { return capital_integral(1.0); }

double PriceDensity::tail_capital(double x) const {
    if (x <= 0.0) return mean();
    return mean() - capital_integral(cdf_left(x));
}

double PriceDensity::ess_sup() const {
    if (is_discrete()) return atoms_.back().value;
    if (tail_scale_) return kInf;
    return knots_.back().q;
}

std::vector<double> PriceDensity::level_breaks() const {
    std::vector<double> out;
    if (is_discrete()) {
        out.push_back(0.0);
        for (double c : cum_) out.push_back(std::min(1.0, c));
    } else {
        for (const auto& k : knots_) out.push_back(k.t);
        if (tail_scale_) out.push_back(1.0);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string PriceDensity::describe() const {
    std::ostringstream os;
    os.precision(12);
    switch (kind_) {
        case Kind::Uniform:
            os << "uniform:" << uniform_lo() << "," << uniform_hi();
            break;
        case Kind::PiecewiseLinearQuantile:
            os << "plq:";
            for (std::size_t i = 0; i < knots_.size(); ++i) {
                if (i) os << ",";
                os << knots_[i].t << ":" << knots_[i].q;
            }
            if (tail_scale_) os << ",tail:" << *tail_scale_;
            break;
        case Kind::EmpiricalDiscrete:
            os << "atoms[" << atoms_.size() << "]";
            break;
    }
    return os.str();
}

void require_continuous(const PriceDensity& d, const char* what) {
    if (!d.continuous()) {
        fail(ErrorKind::UnsupportedDensity,
             std::string(what) + " needs a continuous distribution function");
    }
}

double z_of_v(const PriceDensity& d, double v) {
    require_continuous(d, "z_of_v");
    if (!(v >= 0.0 && v <= 1.0)) fail(ErrorKind::InvalidParameter, "budget outside [0,1]");
    if (v == 1.0) return 0.0;
    if (v == 0.0) return 1.0;
    const double target = d.mean() - v;
    return numerics::root_bracketed([&](double z) { return d.capital_integral(z) - target; },
                                    {0.0, 1.0}, 1e-14, 200);
}

ValidationReport validate(const PriceDensity& d) {
    ValidationReport r;
    if (d.is_discrete()) {
        double sum = 0.0;
        for (const auto& a : d.atoms()) {
            sum += a.prob;
            if (!(a.value > 0.0)) {
                r.issues.push_back({"nonpositive_atom", "atom value must be > 0", a.value});
            }
            if (!(a.prob > 0.0)) {
                r.issues.push_back({"nonpositive_probability", "atom probability must be > 0", a.prob});
            }
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            r.issues.push_back({"probability_sum", "probabilities must sum to 1", sum - 1.0});
        }
    } else {
        const auto& k = d.knots();
        for (std::size_t i = 1; i < k.size(); ++i) {
            if (k[i].q < k[i - 1].q) {
                r.issues.push_back({"nonmonotone_quantile", "quantile decreases between knots",
                                    k[i - 1].q - k[i].q});
            }
        }
    }
    const double m = d.mean();
    if (std::abs(m - 1.0) > 1e-9) {
        r.issues.push_back({"mean", "mean of the density must be 1", m - 1.0});
    }
    return r;
}

}  // namespace riskclaim
