/**
 * @file density.hpp
 * @brief Price density models: CDF, quantile, capital integral and tail capital.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace riskclaim {

struct QuantileKnot {
    double t;
    double q;
};

struct Atom {
    double value;
    double prob;
};

struct ValidationIssue {
    std::string code;
    std::string message;
    double residual;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    bool has(const std::string& code) const;
};

class PriceDensity {
public:
    enum class Kind { Uniform, PiecewiseLinearQuantile, EmpiricalDiscrete };

    static PriceDensity uniform(double lo, double hi);
    /// Knots must start at t = 0. They end at t = 1 unless an exponential tail
    /// scale is given, in which case the tail continues past the last knot.
    static PriceDensity piecewise_linear(std::vector<QuantileKnot> knots,
                                         std::optional<double> tail_scale = std::nullopt);
    static PriceDensity discrete(std::vector<Atom> atoms);

    Kind kind() const { return kind_; }
    bool is_discrete() const { return kind_ == Kind::EmpiricalDiscrete; }
    /// True when F is continuous, which is what the closed-form solvers need.
    bool continuous() const { return continuous_; }

    double cdf(double x) const;       // P[phi <= x]
    double cdf_left(double x) const;  // P[phi < x]
    double quantile(double t) const;  // right-continuous, q(0) := 0, q(1) := ess sup
    double quantile_lower(double t) const;  // inf{x : F(x) >= t}
    double capital_integral(double x) const;
    double tail_capital(double x) const;  // E[phi; phi >= x]
    double mean() const;
    double ess_sup() const;
    bool bounded() const { return !tail_scale_; }

    /// Levels where the quantile function has a kink or jump.
    std::vector<double> level_breaks() const;
    const std::vector<QuantileKnot>& knots() const { return knots_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::optional<double> tail_scale() const { return tail_scale_; }
    /// Original parameters for Uniform, used for serialization.
    double uniform_lo() const { return knots_.front().q; }
    double uniform_hi() const { return knots_.back().q; }

    std::string describe() const;

private:
    PriceDensity() = default;

    Kind kind_ = Kind::Uniform;
    bool continuous_ = true;
    std::vector<QuantileKnot> knots_;
    std::optional<double> tail_scale_;
    std::vector<Atom> atoms_;
    std::vector<double> cum_;   // cumulative probabilities (discrete)
    std::vector<double> phi_;   // capital integral at knot levels / cumulative levels
};

/// Solves capital_integral(z) = 1 - v.
double z_of_v(const PriceDensity& d, double v);

ValidationReport validate(const PriceDensity& d);

void require_continuous(const PriceDensity& d, const char* what);

}  // namespace riskclaim
