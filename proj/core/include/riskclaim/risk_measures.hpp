/**
 * @file risk_measures.hpp
 * @brief Law-invariant risk of claims that are increasing functions of the price density.
 */
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "riskclaim/density.hpp"
#include "riskclaim/loss.hpp"
#include "riskclaim/payoff.hpp"
#include "riskclaim/weight.hpp"

namespace riskclaim {

/// Measure dH(t) on quantile levels: H cumulative, h its density.
struct LevelWeight {
    std::function<double(double)> cumulative;
    std::function<double(double)> density;
    std::vector<double> breaks;

    static LevelWeight lebesgue();
    static LevelWeight capital(const PriceDensity& d);
    static LevelWeight weight(const WeightFunction& k);
};

/// Integral of g(f(q(t))) dH(t) over levels [t_lo, t_hi]; g defaults to identity.
double level_integral(const PriceDensity& d, const Payoff& f, const LevelWeight& w,
                      const std::function<double(double)>& g = {}, double t_lo = 0.0,
                      double t_hi = 1.0, double tol = 1e-12);

double price(const Payoff& f, const PriceDensity& d);
double expectation(const Payoff& f, const PriceDensity& d);

double avar_risk(double lambda, const Payoff& f, const PriceDensity& d);
double quantile_risk(const WeightFunction& k, const Payoff& f, const PriceDensity& d);
double robust_risk(const LossFunction& loss, double lambda, const Payoff& f, const PriceDensity& d);
double shifted_risk(const LossFunction& loss, double lambda, double x0, const Payoff& f,
                    const PriceDensity& d, double bracket_margin = 50.0);
double var_risk(double lambda, const Payoff& f, const PriceDensity& d);

double g_k_value(const PriceDensity& d, const WeightFunction& k, double x);

/// Nondecreasing piecewise-linear quantile function on [0,1]; repeated levels encode jumps.
class QuantileTable {
public:
    static QuantileTable from_knots(std::vector<QuantileKnot> knots);
    static QuantileTable from_atoms(const std::vector<double>& values, const std::vector<double>& probs);

    const std::vector<QuantileKnot>& knots() const { return knots_; }
    /// Linear coefficients (intercept, slope) of the segment containing level t.
    std::pair<double, double> segment(double t) const;

private:
    std::vector<QuantileKnot> knots_;
};

struct HardyLittlewood {
    double lower;
    double upper;
};

HardyLittlewood hardy_littlewood_bounds(const QuantileTable& qx, const QuantileTable& qy);

}  // namespace riskclaim
