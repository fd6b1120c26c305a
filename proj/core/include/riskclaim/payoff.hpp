#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riskclaim/loss.hpp"

namespace riskclaim {

/// Interval [lo, hi) of price-density values on which the payoff is either a
/// constant level or varies continuously.
struct PayoffPiece {
    double lo;
    double hi;
    bool constant;
    double level;
};

/// Nondecreasing claim written as a function of the price density value.
class Payoff {
public:
    enum class Kind { Constant, TwoStep, CappedInverse, StepVector };

    static Payoff constant(double m);
    /// 0 below a, beta on [a, b), cap on [b, inf).
    static Payoff two_step(double beta, double a, double b, double cap = 1.0);
    /// beta + min(I(c max(x, y)) - I(c y), cap - beta) for x >= start, beta below start.
    static Payoff capped_inverse(double beta, double c, double y, double cap, const LossFunction& loss,
                                 double start = 0.0);
    /// levels[j] on [breaks[j-1], breaks[j]); levels has one more entry than breaks.
    static Payoff step_vector(std::vector<double> breaks, std::vector<double> levels);

    Kind kind() const { return kind_; }
    std::string tag() const;

    double operator()(double x) const { return value(x); }
    double value(double x) const;
    double left_limit(double x) const;
    std::vector<PayoffPiece> pieces() const;

    /// The same claim plus a riskless amount t.
    Payoff plus(double t) const;
    double offset() const { return offset_; }

    double beta() const { return beta_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double cap() const { return cap_; }
    double c() const { return c_; }
    double y() const { return y_; }
    double start() const { return start_; }
    double level() const { return level_; }
    const std::optional<LossFunction>& loss() const { return loss_; }
    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<double>& levels() const { return levels_; }

    /// Point where the capped-inverse form reaches its cap.
    double saturation_point() const;

private:
    Payoff() = default;
    double raw_value(double x) const;

    Kind kind_ = Kind::Constant;
    double level_ = 0.0;
    double beta_ = 0.0;
    double a_ = 0.0;
    double b_ = std::numeric_limits<double>::infinity();
    double cap_ = 1.0;
    double c_ = 0.0;
    double y_ = 0.0;
    double start_ = 0.0;
    std::optional<LossFunction> loss_;
    std::vector<double> breaks_;
    std::vector<double> levels_;
    double offset_ = 0.0;
};

}  // namespace riskclaim
