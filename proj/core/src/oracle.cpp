#include "riskclaim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "riskclaim/errors.hpp"
#include "riskclaim/risk_measures.hpp"

namespace riskclaim {

std::vector<Atom> discretize(const PriceDensity& d, std::size_t n) {
    if (n < 2) fail(ErrorKind::InvalidParameter, "discretization needs at least 2 atoms");
    std::vector<Atom> atoms;
    atoms.reserve(n);
    const double dn = static_cast<double>(n);
    double prev = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double cur = d.capital_integral(i == n ? 1.0 : static_cast<double>(i) / dn);
        atoms.push_back({dn * (cur - prev), 1.0 / dn});
        prev = cur;
    }
    return atoms;
}

DiscreteInstance DiscreteInstance::make(std::vector<Atom> atoms, double v, double cap) {
    if (atoms.empty()) fail(ErrorKind::InvalidParameter, "instance needs atoms");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!(atoms[i].value > 0.0) || !(atoms[i].prob > 0.0)) {
            fail(ErrorKind::InvalidParameter, "atoms must be strictly positive");
        }
        if (i && !(atoms[i].value >= atoms[i - 1].value)) {
            fail(ErrorKind::InvalidParameter, "atoms must ascend");
        }
    }
    if (!(cap > 0.0) || !(v >= 0.0 && v <= cap)) fail(ErrorKind::InvalidParameter, "need 0 <= v <= cap");
    DiscreteInstance inst;
    inst.atoms = std::move(atoms);
    inst.v = v;
    inst.cap = cap;
    return inst;
}

std::vector<double> DiscreteInstance::values() const {
    std::vector<double> out;
    for (const auto& a : atoms) out.push_back(a.value);
    return out;
}

Payoff DiscreteInstance::as_payoff(const std::vector<double>& x) const {
    if (x.size() != atoms.size()) fail(ErrorKind::InvalidParameter, "one level per atom expected");
    std::vector<double> breaks, levels{x.front()};
    for (std::size_t i = 1; i < atoms.size(); ++i) {
        if (atoms[i].value > atoms[i - 1].value) {
            breaks.push_back(atoms[i].value);
            levels.push_back(x[i]);
        } else {
            levels.back() = std::max(levels.back(), x[i]);
        }
    }
    return Payoff::step_vector(std::move(breaks), std::move(levels));
}

namespace {

std::vector<double> cumulative_levels(const std::vector<Atom>& atoms) {
    std::vector<double> c{0.0};
    for (const auto& a : atoms) c.push_back(c.back() + a.prob);
    c.back() = std::abs(c.back() - 1.0) < 1e-9 ? 1.0 : c.back();
    return c;
}

double budget_of(const std::vector<Atom>& atoms, const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) s += atoms[i].prob * atoms[i].value * x[i];
    return s;
}

}  // namespace

OracleResult oracle_quantile_based(const DiscreteInstance& inst, const WeightFunction& k) {
    const auto& at = inst.atoms;
    const std::size_t n = at.size();
    const double K = inst.cap;
    const auto C = cumulative_levels(at);
    std::vector<double> M(n + 1, 0.0), G(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        M[i + 1] = M[i] + at[i].prob * at[i].value;
        G[i + 1] = k.gamma(C[i + 1]);
    }

    // 0 on atoms below i0, beta on [i0, j), K from j on.
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    double bbeta = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        const double upper = K * (M[n] - M[j]);
        const double rest = inst.v - upper;
        for (std::size_t i0 = 0; i0 <= j; ++i0) {
            const double mass = M[j] - M[i0];
            double beta;
            if (mass > 0.0) {
                beta = rest / mass;
                if (beta < -1e-12 || beta > K + 1e-12) continue;
                beta = std::clamp(beta, 0.0, K);
            } else {
                if (std::abs(rest) > 1e-12) continue;
                beta = 0.0;
            }
            const double risk = beta * (G[j] - G[i0]) + K * (G[n] - G[j]);
            if (risk < best) {
                best = risk;
                bi = i0;
                bj = j;
                bbeta = beta;
            }
        }
    }
    if (!std::isfinite(best)) fail(ErrorKind::Infeasible, "no two-step claim meets the budget");

    OracleResult r;
    r.risk = best;
    r.beta = bbeta;
    r.x.assign(n, 0.0);
    for (std::size_t i = bi; i < n; ++i) r.x[i] = i < bj ? bbeta : K;
    r.budget_residual = std::abs(budget_of(at, r.x) - inst.v);
    return r;
}

std::vector<double> tail_weights(const std::vector<Atom>& atoms, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) fail(ErrorKind::InvalidParameter, "lambda must lie in (0,1]");
    const auto C = cumulative_levels(atoms);
    const double from = 1.0 - lambda;
    std::vector<double> w(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        w[i] = std::max(0.0, C[i + 1] - std::max(C[i], from)) / lambda;
    }
    return w;
}

namespace {

// Minimizer of sum_i w_i l(x_i) - mu a_i x_i over 0 <= x_1 <= ... <= x_n <= K
// by pooling adjacent violators on block minimizers.
std::vector<double> lagrangian_claim(const std::vector<double>& w, const std::vector<double>& a,
                                     const LossFunction& loss, double mu, double K) {
    struct Block {
        double W, A, value;
        std::size_t len;
    };
    auto solve_block = [&](double W, double A) {
        if (W <= 0.0) return mu > 0.0 ? K : 0.0;
        const double x = loss.inverse_derivative(mu * A / W);
        return std::clamp(std::isfinite(x) ? x : 0.0, 0.0, K);
    };
    std::vector<Block> stack;
    for (std::size_t i = 0; i < w.size(); ++i) {
        Block b{w[i], a[i], solve_block(w[i], a[i]), 1};
        while (!stack.empty() && stack.back().value > b.value) {
            const Block top = stack.back();
            stack.pop_back();
            b.W += top.W;
            b.A += top.A;
            b.len += top.len;
            b.value = solve_block(b.W, b.A);
        }
        stack.push_back(b);
    }
    std::vector<double> x;
    x.reserve(w.size());
    for (const auto& b : stack) x.insert(x.end(), b.len, b.value);
    return x;
}

}  // namespace

OracleResult oracle_robust(const DiscreteInstance& inst, const LossFunction& loss, double lambda) {
    const auto& at = inst.atoms;
    const std::size_t n = at.size();
    const double K = inst.cap;
    const auto w = tail_weights(at, lambda);
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = at[i].prob * at[i].value;

    OracleResult r;
    auto finish = [&](std::vector<double> x) {
        r.x = std::move(x);
        r.beta = r.x.empty() ? 0.0 : r.x.front();
        r.risk = 0.0;
        for (std::size_t i = 0; i < n; ++i) r.risk += w[i] * loss.value(r.x[i]);
        r.budget_residual = std::abs(budget_of(at, r.x) - inst.v);
        return r;
    };
    if (inst.v <= 0.0) return finish(std::vector<double>(n, 0.0));
    if (inst.v >= K * budget_of(at, std::vector<double>(n, 1.0))) return finish(std::vector<double>(n, K));

    auto price_at = [&](double mu) { return budget_of(at, lagrangian_claim(w, a, loss, mu, K)); };
    double lo = 1.0, hi = 1.0;
    while (price_at(lo) >= inst.v) {
        lo *= 0.5;
        if (lo < 1e-300) break;
    }
    while (price_at(hi) < inst.v) {
        hi *= 2.0;
        if (hi > 1e300) fail(ErrorKind::NonConvergence, "multiplier bracket diverged");
    }
    std::size_t it = 0;
    while (hi - lo > 1e-15 * hi && it < 100000) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (price_at(mid) < inst.v ? lo : hi) = mid;
        ++it;
    }
    r.iterations = it;
    const auto xl = lagrangian_claim(w, a, loss, lo, K);
    const auto xh = lagrangian_claim(w, a, loss, hi, K);
    const double pl = budget_of(at, xl), ph = budget_of(at, xh);
    const double theta = ph > pl ? std::clamp((inst.v - pl) / (ph - pl), 0.0, 1.0) : 1.0;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (1.0 - theta) * xl[i] + theta * xh[i];
    return finish(std::move(x));
}

double oracle_avar_dual(const DiscreteInstance& inst, double lambda, const std::vector<double>& x) {
    if (!(lambda > 0.0 && lambda <= 1.0)) fail(ErrorKind::InvalidParameter, "lambda must lie in (0,1]");
    if (x.size() != inst.atoms.size()) fail(ErrorKind::InvalidParameter, "one level per atom expected");
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return x[i] > x[j]; });
    double left = lambda, sum = 0.0;
    for (auto i : order) {
        if (left <= 0.0) break;
        const double m = std::min(inst.atoms[i].prob, left);
        sum += m * x[i];
        left -= m;
    }
    return sum / lambda;
}

double discrete_avar(const DiscreteInstance& inst, double lambda, const std::vector<double>& x) {
    if (x.size() != inst.atoms.size()) fail(ErrorKind::InvalidParameter, "one level per atom expected");
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return x[i] < x[j]; });
    std::vector<Atom> sorted;
    for (auto i : order) sorted.push_back({x[i], inst.atoms[i].prob});
    const auto w = tail_weights(sorted, lambda);
    double sum = 0.0;
    for (std::size_t r = 0; r < sorted.size(); ++r) sum += w[r] * sorted[r].value;
    return sum;
}

VerificationReport verify(const ProblemSpec& spec, std::size_t n, double tol) {
    const auto& m = spec.measure;
    VerificationReport rep;
    rep.measure = m.label;
    rep.v = spec.v;
    rep.n_atoms = n;
    rep.tolerance = tol;

    const Solution sol = solve(spec);
    const auto inst = DiscreteInstance::make(discretize(spec.density, n), spec.v, spec.cap);
    OracleResult orc;
    switch (m.kind) {
        case MeasureSpec::Kind::Avar: orc = oracle_quantile_based(inst, WeightFunction::avar(m.lambda)); break;
        case MeasureSpec::Kind::RhoK: orc = oracle_quantile_based(inst, *m.weight); break;
        case MeasureSpec::Kind::Robust: orc = oracle_robust(inst, *m.loss, m.lambda); break;
        default: fail(ErrorKind::InvalidParameter, "verification supports avar, rho_k and robust measures");
    }
    rep.solver_risk = sol.risk;
    rep.oracle_risk = orc.risk;
    rep.gap = std::abs(sol.risk - orc.risk);
    for (std::size_t i = 0; i < inst.atoms.size(); ++i) {
        rep.payoff_distance = std::max(rep.payoff_distance, std::abs(sol.payoff(inst.atoms[i].value) - orc.x[i]));
    }
    rep.pass = rep.gap <= tol;
    return rep;
}

}  // namespace riskclaim
