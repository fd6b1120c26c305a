#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "riskclaim/errors.hpp"
#include "riskclaim/risk_measures.hpp"
#include "riskclaim/solvers.hpp"

namespace riskclaim {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

Payoff scale(const Payoff& f, double cap) {
    switch (f.kind()) {
        case Payoff::Kind::Constant: return Payoff::constant(f.level() * cap);
        case Payoff::Kind::TwoStep: return Payoff::two_step(f.beta() * cap, f.a(), f.b(), cap);
        default: fail(ErrorKind::InvalidParameter, "payoff cannot be rescaled");
    }
}

double beta_or_xstar(const MeasureSpec& m, const Solution& s) {
    const char* key = "beta";
    switch (m.kind) {
        case MeasureSpec::Kind::RhoK: key = "x_star"; break;
        case MeasureSpec::Kind::Shifted: key = "alpha"; break;
        case MeasureSpec::Kind::Var: key = "r"; break;
        default: break;
    }
    auto it = s.params.find(key);
    return it == s.params.end() ? 0.0 : it->second;
}

}  // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Classical: return "classical";
        case Regime::Diversified: return "diversified";
        case Regime::Boundary: return "boundary";
    }
    return "boundary";
}

Regime regime_from_string(const std::string& s) {
    if (s == "classical") return Regime::Classical;
    if (s == "diversified") return Regime::Diversified;
    if (s == "boundary") return Regime::Boundary;
    fail(ErrorKind::InvalidParameter, "unknown regime '" + s + "'");
}

MeasureSpec MeasureSpec::avar(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) fail(ErrorKind::InvalidParameter, "lambda must lie in (0,1]");
    MeasureSpec m;
    m.kind = Kind::Avar;
    m.lambda = lambda;
    m.label = "avar:" + fmt(lambda);
    return m;
}

MeasureSpec MeasureSpec::rho_k(const WeightFunction& k) {
    MeasureSpec m;
    m.kind = Kind::RhoK;
    m.weight = k;
    m.label = "rho_k:" + k.label();
    return m;
}

MeasureSpec MeasureSpec::robust(double lambda, const LossFunction& loss) {
    if (!(lambda > 0.0 && lambda <= 1.0)) fail(ErrorKind::InvalidParameter, "lambda must lie in (0,1]");
    MeasureSpec m;
    m.kind = Kind::Robust;
    m.lambda = lambda;
    m.loss = loss;
    m.label = "robust:" + fmt(lambda) + ":" + loss.describe();
    return m;
}

MeasureSpec MeasureSpec::shifted(double lambda, double x0, const LossFunction& loss) {
    if (!(lambda > 0.0 && lambda <= 1.0)) fail(ErrorKind::InvalidParameter, "lambda must lie in (0,1]");
    if (!loss.defined_on_reals()) fail(ErrorKind::InvalidParameter, "shifted measure needs exp loss");
    if (!(x0 > 0.0)) fail(ErrorKind::InvalidParameter, "x0 must be positive");
    MeasureSpec m;
    m.kind = Kind::Shifted;
    m.lambda = lambda;
    m.x0 = x0;
    m.loss = loss;
    m.label = "shifted:" + fmt(lambda) + ":" + fmt(x0) + ":" + loss.describe();
    return m;
}

MeasureSpec MeasureSpec::var(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) fail(ErrorKind::InvalidParameter, "lambda must lie in (0,1)");
    MeasureSpec m;
    m.kind = Kind::Var;
    m.lambda = lambda;
    m.label = "var:" + fmt(lambda);
    return m;
}

bool MeasureSpec::positively_homogeneous() const {
    return kind == Kind::Avar || kind == Kind::RhoK || kind == Kind::Var;
}

double evaluate_risk(const MeasureSpec& m, const Payoff& f, const PriceDensity& d) {
    switch (m.kind) {
        case MeasureSpec::Kind::Avar: return avar_risk(m.lambda, f, d);
        case MeasureSpec::Kind::RhoK: return quantile_risk(*m.weight, f, d);
        case MeasureSpec::Kind::Robust: return robust_risk(*m.loss, m.lambda, f, d);
        case MeasureSpec::Kind::Shifted: return shifted_risk(*m.loss, m.lambda, m.x0, f, d);
        case MeasureSpec::Kind::Var: return var_risk(m.lambda, f, d);
    }
    return 0.0;
}

Solution solve(const ProblemSpec& spec) {
    const auto& m = spec.measure;
    const double K = spec.cap;
    if (!(K > 0.0) || !std::isfinite(K)) fail(ErrorKind::InvalidParameter, "cap must be positive");
    if (!(spec.v >= 0.0 && spec.v <= K)) fail(ErrorKind::InvalidParameter, "budget must lie in [0, cap]");

    Solution s;
    if (m.positively_homogeneous()) {
        const double u = spec.v / K;
        switch (m.kind) {
            case MeasureSpec::Kind::Avar: s = solve_avar(spec.density, m.lambda, u); break;
            case MeasureSpec::Kind::RhoK: s = solve_quantile_based(spec.density, *m.weight, u, spec.tol.grid); break;
            default: s = solve_var(spec.density, m.lambda, u); break;
        }
        if (K != 1.0) {
            s.payoff = scale(s.payoff, K);
            s.risk = evaluate_risk(m, s.payoff, spec.density);
            s.budget_residual = std::abs(price(s.payoff, spec.density) - spec.v);
            for (const char* key : {"beta", "beta_star", "r"}) {
                auto it = s.params.find(key);
                if (it != s.params.end()) it->second *= K;
            }
            if (s.critical_value) *s.critical_value *= K;
        }
    } else if (m.kind == MeasureSpec::Kind::Robust) {
        s = solve_robust_utility(spec.density, *m.loss, m.lambda, spec.v, K, spec.tol);
    } else {
        s = solve_shifted(spec.density, *m.loss, m.lambda, spec.v, m.x0, K, spec.tol);
    }
    s.measure = m.label;
    s.budget = spec.v;
    s.cap = K;
    return s;
}

Curve risk_curve(const ProblemSpec& spec, const std::vector<double>& grid, double slack, bool parallel) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) fail(ErrorKind::InvalidParameter, "budget grid must ascend");
    }
    auto run = [&spec](double v) {
        CurvePoint p;
        p.v = v;
        try {
            ProblemSpec local = spec;
            local.v = v;
            const Solution s = solve(local);
            p.ok = true;
            p.risk = s.risk;
            p.regime = s.regime;
            p.beta_or_xstar = beta_or_xstar(spec.measure, s);
        } catch (const std::exception& e) {
            p.error = e.what();
        }
        return p;
    };

    Curve c;
    if (parallel) {
        std::vector<std::future<CurvePoint>> jobs;
        for (double v : grid) jobs.push_back(std::async(std::launch::async, run, v));
        for (auto& j : jobs) c.points.push_back(j.get());
    } else {
        for (double v : grid) c.points.push_back(run(v));
    }

    auto& chk = c.check;
    std::vector<const CurvePoint*> good;
    for (const auto& p : c.points) {
        if (p.ok) good.push_back(&p);
        else ++chk.failed_points;
    }
    for (std::size_t i = 1; i < good.size(); ++i) {
        const double diff = good[i]->risk - good[i - 1]->risk;
        chk.max_monotone_violation = std::max(chk.max_monotone_violation, -diff);
        if (diff < -slack) chk.increasing = false;
        if (!(diff > 0.0)) chk.strictly_increasing = false;
    }
    if (!spec.measure.convex()) {
        chk.convexity_checked = false;
        chk.convex = false;
        chk.note = "convexity skipped (non-convex measure)";
    } else {
        for (std::size_t i = 2; i < good.size(); ++i) {
            const double s0 = (good[i - 1]->risk - good[i - 2]->risk) / (good[i - 1]->v - good[i - 2]->v);
            const double s1 = (good[i]->risk - good[i - 1]->risk) / (good[i]->v - good[i - 1]->v);
            chk.max_convexity_violation = std::max(chk.max_convexity_violation, s0 - s1);
            if (s1 < s0 - slack) chk.convex = false;
        }
    }
    for (const auto* p : good) {
        if (p->v == 0.0 || p->v == spec.cap) {
            const double expect = evaluate_risk(spec.measure, Payoff::constant(p->v), spec.density);
            if (std::abs(p->risk - expect) > slack) chk.endpoints_ok = false;
        }
    }
    return c;
}

}  // namespace riskclaim
