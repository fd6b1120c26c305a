#include "riskclaim/loss.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "riskclaim/errors.hpp"

namespace riskclaim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LossFunction LossFunction::exponential(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) fail(ErrorKind::InvalidParameter, "exponential loss needs a > 0");
    return LossFunction(Kind::Exponential, a);
}

LossFunction LossFunction::power(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorKind::InvalidParameter, "power loss needs p > 1");
    return LossFunction(Kind::Power, p);
}

LossFunction LossFunction::shifted(double m) const {
    LossFunction out = *this;
    out.shift_ += m;
    return out;
}

double LossFunction::value(double x) const {
    const double u = x - shift_;
    if (kind_ == Kind::Exponential) return std::exp(param_ * u);
    return u > 0.0 ? std::pow(u, param_) : 0.0;
}

double LossFunction::derivative(double x) const {
    const double u = x - shift_;
    if (kind_ == Kind::Exponential) return param_ * std::exp(param_ * u);
    return u > 0.0 ? param_ * std::pow(u, param_ - 1.0) : 0.0;
}

double LossFunction::inverse_derivative(double u) const {
    if (kind_ == Kind::Exponential) {
        if (!(u > 0.0)) return -kInf;
        return shift_ + std::log(u / param_) / param_;
    }
    if (u < 0.0) return -kInf;
    return shift_ + std::pow(u / param_, 1.0 / (param_ - 1.0));
}

double LossFunction::inverse(double y) const {
    if (kind_ == Kind::Exponential) {
        if (!(y > 0.0)) fail(ErrorKind::InvalidParameter, "exponential loss inverse needs y > 0");
        return shift_ + std::log(y) / param_;
    }
    if (y < 0.0) fail(ErrorKind::InvalidParameter, "power loss inverse needs y >= 0");
    return shift_ + std::pow(y, 1.0 / param_);
}

bool LossFunction::strictly_convex_on(double lo, double hi, int samples) const {
    if (!(hi > lo) || samples < 3) return false;
    const double h = (hi - lo) / samples;
    for (int i = 1; i < samples; ++i) {
        const double x = lo + h * i;
        const double d2 = value(x - h) - 2.0 * value(x) + value(x + h);
        if (!(d2 > 0.0)) return false;
    }
    return true;
}

std::string LossFunction::describe() const {
    std::ostringstream os;
    os.precision(12);
    os << (kind_ == Kind::Exponential ? "exp:" : "pow:") << param_;
    if (shift_ != 0.0) os << "@" << shift_;
    return os.str();
}

}  // namespace riskclaim
