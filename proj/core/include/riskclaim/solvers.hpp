/**
 * @file solvers.hpp
 * @brief Risk-minimal claims under a price budget.
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riskclaim/density.hpp"
#include "riskclaim/loss.hpp"
#include "riskclaim/numerics.hpp"
#include "riskclaim/payoff.hpp"
#include "riskclaim/weight.hpp"

namespace riskclaim {

enum class Regime { Classical, Diversified, Boundary };

const char* to_string(Regime r);
Regime regime_from_string(const std::string& s);

struct Solution {
    std::string measure;
    Payoff payoff = Payoff::constant(0.0);
    double risk = 0.0;
    double budget = 0.0;
    double cap = 1.0;
    double budget_residual = 0.0;
    Regime regime = Regime::Boundary;
    std::map<std::string, double> params;
    std::optional<double> critical_value;
    std::map<std::string, double> diagnostics;
    /// Near-optimal points (x, y, value) for two-parameter searches.
    std::vector<numerics::Point2D> minimizers;
};

struct Tolerances {
    double budget = 1e-8;
    double beta_tol = 1e-9;
    double inner_tol = 1e-13;
    double fixed_point_tol = 1e-8;
    std::size_t fixed_point_max_iter = 200;
    double damping = 0.5;
    double bracket_margin = 50.0;
    numerics::Min2DOptions grid{};
};

struct MeasureSpec {
    enum class Kind { Avar, RhoK, Robust, Shifted, Var };

    Kind kind = Kind::Avar;
    double lambda = 1.0;
    std::optional<WeightFunction> weight;
    std::optional<LossFunction> loss;
    double x0 = 1.0;
    std::string label;

    static MeasureSpec avar(double lambda);
    static MeasureSpec rho_k(const WeightFunction& k);
    static MeasureSpec robust(double lambda, const LossFunction& loss);
    static MeasureSpec shifted(double lambda, double x0, const LossFunction& loss);
    static MeasureSpec var(double lambda);

    bool positively_homogeneous() const;
    bool convex() const { return kind != Kind::Var; }
};

struct ProblemSpec {
    MeasureSpec measure;
    PriceDensity density;
    double v = 0.0;
    double cap = 1.0;
    Tolerances tol{};
};

double y_lambda(const PriceDensity& d, double lambda);

Solution solve_avar(const PriceDensity& d, double lambda, double v);
Solution solve_quantile_based(const PriceDensity& d, const WeightFunction& k, double v,
                              const numerics::Min2DOptions& grid = {});
Solution solve_robust_utility(const PriceDensity& d, const LossFunction& loss, double lambda, double v,
                              double cap = 1.0, const Tolerances& tol = {});

struct CriticalValue {
    double value;
    double lo;
    double hi;
    bool interior;  // false when no regime change was found below the tail bound
};

CriticalValue critical_value_robust(const PriceDensity& d, const LossFunction& loss, double lambda,
                                    double cap = 1.0, const Tolerances& tol = {});
Solution solve_shifted(const PriceDensity& d, const LossFunction& loss, double lambda, double v,
                       double x0, double cap = 1.0, const Tolerances& tol = {});
Solution solve_var(const PriceDensity& d, double lambda, double v);

/// Dispatches on the measure and scales by the cap where the measure allows it.
Solution solve(const ProblemSpec& spec);

/// Risk of a claim under the measure in the spec.
double evaluate_risk(const MeasureSpec& m, const Payoff& f, const PriceDensity& d);

struct CurvePoint {
    double v = 0.0;
    bool ok = false;
    double risk = 0.0;
    Regime regime = Regime::Boundary;
    double beta_or_xstar = 0.0;
    std::string error;
};

struct CurveCheck {
    bool increasing = true;
    bool strictly_increasing = true;
    bool convex = true;
    bool convexity_checked = true;
    bool endpoints_ok = true;
    double max_monotone_violation = 0.0;
    double max_convexity_violation = 0.0;
    std::size_t failed_points = 0;
    std::string note;
};

struct Curve {
    std::vector<CurvePoint> points;
    CurveCheck check;
};

Curve risk_curve(const ProblemSpec& spec, const std::vector<double>& grid, double slack = 1e-7,
                 bool parallel = true);

double huber_strassen_pi(const PriceDensity& d, double lambda, double x);

}  // namespace riskclaim
