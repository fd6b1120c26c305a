/**
 * @file numerics.hpp
 * @brief Root finding, derivative-free minimization and adaptive quadrature.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace riskclaim::numerics {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

struct Bracket {
    double lo;
    double hi;

    Bracket(double lo, double hi);
};

struct RootOptions {
    double tol = 1e-12;
    std::size_t max_iter = 500;
};

/// Hybrid bracketed root. Stops when |f| <= tol or width <= tol * max(1, |x|).
double root_bracketed(const Fn1& f, Bracket b, double tol = 1e-12, std::size_t max_iter = 500);

struct Min1DResult {
    double x = 0.0;
    double fx = 0.0;
    bool multimodal = false;
    std::size_t evaluations = 0;
};

Min1DResult minimize_1d(const Fn1& f, double lo, double hi, double tol = 1e-10);

struct Box2D {
    double x_lo, x_hi, y_lo, y_hi;
};

struct Min2DOptions {
    std::size_t coarse_n = 400;
    std::size_t rounds = 40;
    std::size_t refine_n = 11;
    double flat_tol = 1e-9;
    double tie_tol = 1e-9;
    std::size_t max_reported = 32;
};

struct Point2D {
    double x, y, f;
};

struct Min2DResult {
    double x = 0.0;
    double y = 0.0;
    double f = 0.0;
    bool flat = false;
    double range = 0.0;
    std::vector<Point2D> near_minimizers;
    std::size_t evaluations = 0;
};

Min2DResult minimize_2d(const Fn2& f, const Box2D& box, const Min2DOptions& opt = {});

struct QuadOptions {
    double tol = 1e-10;
    std::vector<double> breakpoints;
    std::size_t max_subdivisions = 1000000;
};

double integrate_adaptive(const Fn1& f, double lo, double hi, const QuadOptions& opt);
double integrate_adaptive(const Fn1& f, double lo, double hi, double tol = 1e-10);

}  // namespace riskclaim::numerics
