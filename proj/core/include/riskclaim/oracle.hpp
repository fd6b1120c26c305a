/**
 * @file oracle.hpp
 * @brief Brute-force reference solutions on discretized densities.
 */
#pragma once

#include <vector>

#include "riskclaim/density.hpp"
#include "riskclaim/loss.hpp"
#include "riskclaim/payoff.hpp"
#include "riskclaim/solvers.hpp"
#include "riskclaim/weight.hpp"

namespace riskclaim {

/// n equal-probability atoms placed at the conditional means of the quantile cells.
std::vector<Atom> discretize(const PriceDensity& d, std::size_t n);

struct DiscreteInstance {
    std::vector<Atom> atoms;  // ascending, strictly positive
    double v = 0.0;
    double cap = 1.0;

    static DiscreteInstance make(std::vector<Atom> atoms, double v, double cap = 1.0);
    std::vector<double> values() const;
    /// Step-vector payoff on the atom grid.
    Payoff as_payoff(const std::vector<double>& x) const;
};

struct OracleResult {
    double risk = 0.0;
    std::vector<double> x;  // claim value per atom
    double beta = 0.0;
    double budget_residual = 0.0;
    std::size_t iterations = 0;
};

OracleResult oracle_quantile_based(const DiscreteInstance& inst, const WeightFunction& k);
OracleResult oracle_robust(const DiscreteInstance& inst, const LossFunction& loss, double lambda);

/// Quantile-cell weights (1/lambda) |cell_i intersect [1 - lambda, 1)|.
std::vector<double> tail_weights(const std::vector<Atom>& atoms, double lambda);

/// Worst-case expectation over densities bounded by 1/lambda, by greedy filling.
double oracle_avar_dual(const DiscreteInstance& inst, double lambda, const std::vector<double>& x);
/// Same quantity from the quantile representation.
double discrete_avar(const DiscreteInstance& inst, double lambda, const std::vector<double>& x);

struct VerificationReport {
    std::string measure;
    double v = 0.0;
    double solver_risk = 0.0;
    double oracle_risk = 0.0;
    double gap = 0.0;
    std::size_t n_atoms = 0;
    double payoff_distance = 0.0;
    double tolerance = 2e-3;
    bool pass = false;
};

VerificationReport verify(const ProblemSpec& spec, std::size_t n, double tol = 2e-3);

}  // namespace riskclaim
