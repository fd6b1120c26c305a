#pragma once

#include <string>
#include <vector>

namespace riskclaim {

/// Nondecreasing right-continuous weight k on [0,1) with unit integral.
/// Each piece is affine: k(t) = intercept + slope * t on [start, next start).
class WeightFunction {
public:
    struct Piece {
        double start;
        double intercept;
        double slope;
    };

    static WeightFunction avar(double lambda);
    /// low on [0, xi), high on [xi, 1) with high chosen so that k integrates to 1.
    static WeightFunction two_level(double xi, double low);
    /// Piecewise-constant steps (t_j, k_j), first threshold 0.
    static WeightFunction steps(const std::vector<std::pair<double, double>>& steps);
    /// k(t) = 1 - slope/2 + slope * t, slope in [0, 2].
    static WeightFunction affine(double slope);
    static WeightFunction constant() { return affine(0.0); }
    static WeightFunction from_pieces(std::vector<Piece> pieces, std::string label);

    double value(double t) const;
    double gamma(double x) const;
    /// Mean of k over [a, b]; k(a) when a == b.
    double average(double a, double b) const;
    std::vector<double> breaks() const;
    const std::vector<Piece>& pieces() const { return pieces_; }
    const std::string& label() const { return label_; }

private:
    std::vector<Piece> pieces_;
    std::vector<double> gamma_at_start_;
    std::string label_;
};

double gamma_value(const WeightFunction& k, double x);

}  // namespace riskclaim
