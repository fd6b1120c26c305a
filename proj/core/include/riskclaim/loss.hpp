#pragma once

#include <string>

namespace riskclaim {

/// Convex increasing loss with derivative and extended inverse of the derivative.
class LossFunction {
public:
    enum class Kind { Exponential, Power };

    static LossFunction exponential(double a);
    static LossFunction power(double p);

    /// Loss x -> base(x - m).
    LossFunction shifted(double m) const;

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }
    double shift() const { return shift_; }
    bool defined_on_reals() const { return kind_ == Kind::Exponential; }

    double value(double x) const;
    double derivative(double x) const;
    /// Inverse of the derivative, -inf below the range of the derivative.
    double inverse_derivative(double u) const;
    /// Inverse of the loss itself.
    double inverse(double y) const;

    bool strictly_convex_on(double lo, double hi, int samples = 64) const;
    std::string describe() const;

private:
    LossFunction(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
    double shift_ = 0.0;
};

}  // namespace riskclaim
