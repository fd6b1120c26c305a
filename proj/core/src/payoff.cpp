#include "riskclaim/payoff.hpp"

#include <algorithm>
#include <cmath>

#include "riskclaim/errors.hpp"

namespace riskclaim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Payoff Payoff::constant(double m) {
    if (!std::isfinite(m)) fail(ErrorKind::InvalidParameter, "constant payoff must be finite");
    Payoff p;
    p.kind_ = Kind::Constant;
    p.level_ = m;
    p.cap_ = std::max(m, 0.0);
    return p;
}

Payoff Payoff::two_step(double beta, double a, double b, double cap) {
    if (!(cap > 0.0) || !std::isfinite(cap)) fail(ErrorKind::InvalidParameter, "cap must be positive");
    if (!(beta >= 0.0 && beta <= cap)) fail(ErrorKind::InvalidParameter, "two-step level must lie in [0, cap]");
    if (!(a >= 0.0 && a <= b) || std::isnan(b)) {
        fail(ErrorKind::InvalidParameter, "two-step thresholds need 0 <= a <= b");
    }
    Payoff p;
    p.kind_ = Kind::TwoStep;
    p.beta_ = beta;
    p.a_ = a;
    p.b_ = b;
    p.cap_ = cap;
    return p;
}

Payoff Payoff::capped_inverse(double beta, double c, double y, double cap, const LossFunction& loss,
                              double start) {
    if (!(cap > 0.0) || !std::isfinite(cap)) fail(ErrorKind::InvalidParameter, "cap must be positive");
    if (!(beta >= 0.0 && beta <= cap)) fail(ErrorKind::InvalidParameter, "floor must lie in [0, cap]");
    if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::InvalidParameter, "scale c must be positive");
    if (!(y >= 0.0) || !std::isfinite(y)) fail(ErrorKind::InvalidParameter, "threshold y must be >= 0");
    if (!std::isfinite(loss.inverse_derivative(c * y))) {
        fail(ErrorKind::InvalidParameter, "I(c y) must be finite");
    }
    Payoff p;
    p.kind_ = Kind::CappedInverse;
    p.beta_ = beta;
    p.c_ = c;
    p.y_ = y;
    p.cap_ = cap;
    p.loss_ = loss;
    p.start_ = std::max(0.0, start);
    return p;
}

Payoff Payoff::step_vector(std::vector<double> breaks, std::vector<double> levels) {
    if (levels.size() != breaks.size() + 1) {
        fail(ErrorKind::InvalidParameter, "step vector needs one more level than breakpoints");
    }
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        if (!(breaks[i] > breaks[i - 1])) fail(ErrorKind::InvalidParameter, "breakpoints must ascend");
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!std::isfinite(levels[i])) fail(ErrorKind::InvalidParameter, "levels must be finite");
        if (i && levels[i] < levels[i - 1]) fail(ErrorKind::InvalidParameter, "levels must be nondecreasing");
    }
    Payoff p;
    p.kind_ = Kind::StepVector;
    p.cap_ = std::max(0.0, levels.back());
    p.breaks_ = std::move(breaks);
    p.levels_ = std::move(levels);
    return p;
}

std::string Payoff::tag() const {
    switch (kind_) {
        case Kind::Constant: return "constant";
        case Kind::TwoStep: return "two_step";
        case Kind::CappedInverse: return "capped_inverse";
        case Kind::StepVector: return "step_vector";
    }
    return "unknown";
}

double Payoff::saturation_point() const {
    if (kind_ != Kind::CappedInverse) return kInf;
    if (beta_ >= cap_) return y_;
    const double target = cap_ - beta_ + loss_->inverse_derivative(c_ * y_);
    return std::max({y_, start_, loss_->derivative(target) / c_});
}

double Payoff::raw_value(double x) const {
    switch (kind_) {
        case Kind::Constant: return level_;
        case Kind::TwoStep:
            if (x >= b_) return cap_;
            if (x >= a_) return beta_;
            return 0.0;
        case Kind::CappedInverse: {
            if (x < start_ || x <= y_) return beta_;
            if (x >= saturation_point()) return cap_;
            const double rise = loss_->inverse_derivative(c_ * x) - loss_->inverse_derivative(c_ * y_);
            return beta_ + std::clamp(rise, 0.0, cap_ - beta_);
        }
        case Kind::StepVector: {
            auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
            return levels_[static_cast<std::size_t>(it - breaks_.begin())];
        }
    }
    return 0.0;
}

double Payoff::value(double x) const { return raw_value(x) + offset_; }

double Payoff::left_limit(double x) const {
    switch (kind_) {
        case Kind::Constant:
            return value(x);
        case Kind::CappedInverse:
            return x <= start_ ? beta_ + offset_ : value(x);
        case Kind::TwoStep:
            if (x > b_) return cap_ + offset_;
            if (x > a_) return beta_ + offset_;
            return offset_;
        case Kind::StepVector: {
            auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
            return levels_[static_cast<std::size_t>(it - breaks_.begin())] + offset_;
        }
    }
    return 0.0;
}

std::vector<PayoffPiece> Payoff::pieces() const {
    std::vector<PayoffPiece> out;
    auto push = [&](double lo, double hi, bool constant, double level) {
        if (hi > lo) out.push_back({lo, hi, constant, level + offset_});
    };
    switch (kind_) {
        case Kind::Constant:
            push(0.0, kInf, true, level_);
            break;
        case Kind::TwoStep:
            push(0.0, a_, true, 0.0);
            push(a_, b_, true, beta_);
            push(b_, kInf, true, cap_);
            break;
        case Kind::CappedInverse: {
            const double s = saturation_point();
            const double flat = std::max(y_, start_);
            push(0.0, flat, true, beta_);
            push(flat, s, false, 0.0);
            push(s, kInf, true, cap_);
            break;
        }
        case Kind::StepVector: {
            double lo = 0.0;
            for (std::size_t j = 0; j < breaks_.size(); ++j) {
                push(lo, breaks_[j], true, levels_[j]);
                lo = std::max(lo, breaks_[j]);
            }
            push(lo, kInf, true, levels_.back());
            break;
        }
    }
    return out;
}

Payoff Payoff::plus(double t) const {
    Payoff p = *this;
    p.offset_ += t;
    return p;
}

}  // namespace riskclaim
