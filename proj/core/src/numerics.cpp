#include "riskclaim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

#include "riskclaim/errors.hpp"

namespace riskclaim::numerics {

Bracket::Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi)) {
        fail(ErrorKind::InvalidParameter, "bracket requires finite lo < hi");
    }
}

double root_bracketed(const Fn1& f, Bracket b, double tol, std::size_t max_iter) {
    if (!(tol > 0.0)) fail(ErrorKind::InvalidParameter, "root tolerance must be positive");
    const double flo = f(b.lo);
    const double fhi = f(b.hi);
    if (std::isnan(flo) || std::isnan(fhi)) fail(ErrorKind::NoBracket, "f is NaN at bracket end");
    if (std::abs(flo) <= tol) return b.lo;
    if (std::abs(fhi) <= tol) return b.hi;
    if ((flo > 0) == (fhi > 0)) {
        fail(ErrorKind::NoBracket, "no sign change on [" + std::to_string(b.lo) + ", " +
                                       std::to_string(b.hi) + "]");
    }

    // Values within tol are reported as exact zeros so the solver stops there.
    auto g = [&](double x) {
        const double v = f(x);
        return std::abs(v) <= tol ? 0.0 : v;
    };
    auto done = [tol](double a, double c) {
        return std::abs(c - a) <= tol * std::max(1.0, std::abs(0.5 * (a + c)));
    };

    std::uintmax_t iters = max_iter;
    std::pair<double, double> r;
    try {
        r = boost::math::tools::toms748_solve(g, b.lo, b.hi, flo, fhi, done, iters);
    } catch (const std::exception& e) {
        fail(ErrorKind::NoBracket, e.what());
    }
    const double fa = std::abs(f(r.first));
    const double fb = std::abs(f(r.second));
    const double x = fa <= fb ? r.first : r.second;
    const double fx = std::min(fa, fb);
    if (fx > tol && !done(r.first, r.second)) {
        fail(ErrorKind::NonConvergence,
             "root not converged after " + std::to_string(iters) + " iterations, |f|=" +
                 std::to_string(fx));
    }
    return x;
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;

std::pair<double, double> golden(const Fn1& f, double a, double b, double tol,
                                 std::size_t& evals) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    evals += 2;
    while (std::abs(b - a) > tol * std::max(1.0, std::abs(a) + std::abs(b)) * 0.5 &&
           std::abs(b - a) > 1e-15) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    return fc <= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

}  // namespace

Min1DResult minimize_1d(const Fn1& f, double lo, double hi, double tol) {
    if (!(lo <= hi)) fail(ErrorKind::InvalidParameter, "minimize_1d requires lo <= hi");
    Min1DResult res;
    if (lo == hi) {
        res.x = lo;
        res.fx = f(lo);
        res.evaluations = 1;
        return res;
    }

    constexpr std::size_t kScan = 129;
    const double h = (hi - lo) / static_cast<double>(kScan - 1);
    std::size_t best = 0;
    double fbest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < kScan; ++i) {
        const double x = i + 1 == kScan ? hi : lo + h * static_cast<double>(i);
        const double fx = f(x);
        if (fx < fbest) {
            fbest = fx;
            best = i;
        }
    }
    res.evaluations = kScan;
    res.x = best + 1 == kScan ? hi : lo + h * static_cast<double>(best);
    res.fx = fbest;

    const double a = best == 0 ? lo : lo + h * static_cast<double>(best - 1);
    const double b = best + 1 >= kScan ? hi : std::min(hi, lo + h * static_cast<double>(best + 1));
    auto [xl, fl] = golden(f, a, b, tol, res.evaluations);
    if (fl < res.fx) {
        res.x = xl;
        res.fx = fl;
    }

    auto [xg, fg] = golden(f, lo, hi, tol, res.evaluations);
    if ((xg < a - h || xg > b + h) && std::abs(fg - res.fx) > 1e-12 * (1.0 + std::abs(res.fx))) {
        res.multimodal = true;
    }
    return res;
}

Min2DResult minimize_2d(const Fn2& f, const Box2D& box, const Min2DOptions& opt) {
    if (!(box.x_lo <= box.x_hi && box.y_lo <= box.y_hi)) {
        fail(ErrorKind::InvalidParameter, "minimize_2d requires a nonempty box");
    }
    if (opt.coarse_n < 2 || opt.refine_n < 2) {
        fail(ErrorKind::InvalidParameter, "grid sizes must be at least 2");
    }
    Min2DResult res;
    const std::size_t n = opt.coarse_n;
    const double hx = (box.x_hi - box.x_lo) / static_cast<double>(n - 1);
    const double hy = (box.y_hi - box.y_lo) / static_cast<double>(n - 1);
    auto gx = [&](std::size_t i) { return i + 1 == n ? box.x_hi : box.x_lo + hx * double(i); };
    auto gy = [&](std::size_t j) { return j + 1 == n ? box.y_hi : box.y_lo + hy * double(j); };

    std::vector<double> values(n * n);
    double fmin = std::numeric_limits<double>::infinity();
    double fmax = -std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = f(gx(i), gy(j));
            values[i * n + j] = v;
            if (v < fmin) {
                fmin = v;
                bi = i;
                bj = j;
            }
            if (v > fmax) fmax = v;
        }
    }
    res.evaluations = n * n;
    res.range = fmax - fmin;

    for (std::size_t i = 0; i < n && res.near_minimizers.size() < opt.max_reported; ++i) {
        for (std::size_t j = 0; j < n && res.near_minimizers.size() < opt.max_reported; ++j) {
            if (values[i * n + j] <= fmin + opt.tie_tol) {
                res.near_minimizers.push_back({gx(i), gy(j), values[i * n + j]});
            }
        }
    }

    if (res.range < opt.flat_tol) {
        res.flat = true;
        res.x = box.x_lo;
        res.y = box.y_lo;
        res.f = values[0];
        return res;
    }

    double x = gx(bi), y = gy(bj), fx = fmin;
    double wx = hx, wy = hy;
    const std::size_t m = opt.refine_n;
    for (std::size_t r = 0; r < opt.rounds; ++r) {
        const double x0 = std::max(box.x_lo, x - wx), x1 = std::min(box.x_hi, x + wx);
        const double y0 = std::max(box.y_lo, y - wy), y1 = std::min(box.y_hi, y + wy);
        double bx = x, by = y, bf = fx;
        for (std::size_t i = 0; i < m; ++i) {
            const double xi = i + 1 == m ? x1 : x0 + (x1 - x0) * double(i) / double(m - 1);
            for (std::size_t j = 0; j < m; ++j) {
                const double yj = j + 1 == m ? y1 : y0 + (y1 - y0) * double(j) / double(m - 1);
                const double v = f(xi, yj);
                if (v < bf) {
                    bf = v;
                    bx = xi;
                    by = yj;
                }
            }
        }
        res.evaluations += m * m;
        x = bx;
        y = by;
        fx = bf;
        wx *= 0.5;
        wy *= 0.5;
    }
    res.x = std::clamp(x, box.x_lo, box.x_hi);
    res.y = std::clamp(y, box.y_lo, box.y_hi);
    res.f = fx;
    return res;
}

namespace {

struct Segment {
    double a, b, fa, fm, fb, whole, tol;
    int depth;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

double integrate_adaptive(const Fn1& f, double lo, double hi, const QuadOptions& opt) {
    if (!(opt.tol > 0.0)) fail(ErrorKind::InvalidParameter, "quadrature tolerance must be positive");
    if (lo == hi) return 0.0;
    double sign = 1.0;
    if (hi < lo) {
        std::swap(lo, hi);
        sign = -1.0;
    }

    std::vector<double> cuts{lo};
    std::vector<double> bps = opt.breakpoints;
    std::sort(bps.begin(), bps.end());
    for (double p : bps) {
        if (p > cuts.back() && p < hi) cuts.push_back(p);
    }
    cuts.push_back(hi);

    constexpr int kMinDepth = 3;
    constexpr int kMaxDepth = 60;
    const double total = hi - lo;
    std::size_t splits = 0;
    double sum = 0.0;
    std::vector<Segment> stack;

    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k], b = cuts[k + 1];
        const double m = 0.5 * (a + b);
        const double fa = f(a), fm = f(m), fb = f(b);
        stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb),
                         opt.tol * (b - a) / total, 0});
        while (!stack.empty()) {
            Segment s = stack.back();
            stack.pop_back();
            const double mid = 0.5 * (s.a + s.b);
            const double lm = 0.5 * (s.a + mid), rm = 0.5 * (mid + s.b);
            const double flm = f(lm), frm = f(rm);
            const double left = simpson(s.a, mid, s.fa, flm, s.fm);
            const double right = simpson(mid, s.b, s.fm, frm, s.fb);
            const double diff = left + right - s.whole;
            // Differences at roundoff level cannot shrink further.
            const double noise = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
            if ((s.depth >= kMinDepth && std::abs(diff) <= 15.0 * std::max(s.tol, noise)) || s.depth >= kMaxDepth) {
                sum += left + right + diff / 15.0;
                continue;
            }
            if (++splits > opt.max_subdivisions) {
                fail(ErrorKind::NonConvergence, "adaptive quadrature exceeded subdivision cap");
            }
            stack.push_back({mid, s.b, s.fm, frm, s.fb, right, 0.5 * s.tol, s.depth + 1});
            stack.push_back({s.a, mid, s.fa, flm, s.fm, left, 0.5 * s.tol, s.depth + 1});
        }
    }
    return sign * sum;
}

double integrate_adaptive(const Fn1& f, double lo, double hi, double tol) {
    QuadOptions opt;
    opt.tol = tol;
    return integrate_adaptive(f, lo, hi, opt);
}

}  // namespace riskclaim::numerics
