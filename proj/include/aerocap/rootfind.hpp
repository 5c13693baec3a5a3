#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace aerocap {

// ---------------------------------------------------------------------------
// Nelder-Mead simplex search with optional component-ordering constraint
// ---------------------------------------------------------------------------

struct NMConfig {
    double initial_step = 10.0;  // offset added per component to build the simplex
    double eps = 1.0;            // stop when std of simplex function values < eps
    int max_iters = 100;
    double penalty = 1.0e12;     // assigned to points violating x1 <= x2 <= ... <= xn
};

struct NMResult {
    std::vector<double> x;
    double f = 0.0;
    int iters = 0;
    bool converged = false;
};

namespace detail {

inline double ordering_violation(const std::vector<double>& x) {
    double v = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        v += std::max(0.0, x[i - 1] - x[i]);
    }
    return v;
}

inline double stddev(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double s2 = 0.0;
    for (double x : v) s2 += (x - mean) * (x - mean);
    return std::sqrt(s2 / static_cast<double>(v.size()));
}

}  // namespace detail

// Standard reflection/expansion/contraction/shrink simplex. With
// ordering_constraint the objective is replaced by a large penalty for
// out-of-order components; the penalty grows with the violation so the simplex
// can walk back into the feasible region from an infeasible start.
template <class F>
NMResult nelder_mead(F&& objective, std::vector<double> x0, const NMConfig& cfg,
                     bool ordering_constraint) {
    const std::size_t n = x0.size();
    auto eval = [&](const std::vector<double>& x) {
        if (ordering_constraint) {
            const double viol = detail::ordering_violation(x);
            if (viol > 0.0) {
                return cfg.penalty * (1.0 + viol);
            }
        }
        return static_cast<double>(objective(x));
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += cfg.initial_step;
    }
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = eval(simplex[i]);
    }

    NMResult result;
    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        std::vector<std::size_t> order(n + 1);
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });

        if (detail::stddev(fv) < cfg.eps) {
            result.converged = true;
            break;
        }

        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second_worst = order[n >= 1 ? n - 1 : 0];

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto combine = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t k = 0; k < n; ++k) {
                p[k] = centroid[k] + coeff * (simplex[worst][k] - centroid[k]);
            }
            return p;
        };

        std::vector<double> reflected = combine(-1.0);
        const double f_reflected = eval(reflected);

        if (f_reflected < fv[best]) {
            std::vector<double> expanded = combine(-2.0);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = std::move(expanded);
                fv[worst] = f_expanded;
            } else {
                simplex[worst] = std::move(reflected);
                fv[worst] = f_reflected;
            }
        } else if (f_reflected < fv[second_worst]) {
            simplex[worst] = std::move(reflected);
            fv[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < fv[worst];
            std::vector<double> contracted = combine(outside ? -0.5 : 0.5);
            const double f_contracted = eval(contracted);
            if (f_contracted < std::min(f_reflected, fv[worst])) {
                simplex[worst] = std::move(contracted);
                fv[worst] = f_contracted;
            } else {
                // shrink toward best
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < n; ++k) {
                        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
                    }
                    fv[i] = eval(simplex[i]);
                }
            }
        }
    }
    result.iters = iter;

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (fv[i] < fv[best]) best = i;
    }
    result.x = simplex[best];
    result.f = fv[best];
    return result;
}

// ---------------------------------------------------------------------------
// Newton-Raphson with secant derivative approximation
// ---------------------------------------------------------------------------

enum class SecantStatus { Converged, Stalled, MaxIters };

struct SecantResult {
    double x = 0.0;
    double f = 0.0;
    int iters = 0;
    SecantStatus status = SecantStatus::MaxIters;
};

// Iterates x_{k+1} = x_k - z_k (x_k - x_{k-1}) / (z_k - z_{k-1}); stops when
// |z * dz/dx| <= eps with dz/dx taken from the latest secant slope.
template <class F>
SecantResult newton_secant(F&& z, double x0, double x1, double eps, int max_iters) {
    SecantResult res;
    double f0 = z(x0);
    double f1 = z(x1);
    res.x = x1;
    res.f = f1;
    for (int k = 0; k < max_iters; ++k) {
        res.iters = k + 1;
        const double df = f1 - f0;
        if (df == 0.0) {
            res.status = SecantStatus::Stalled;
            return res;
        }
        const double slope = df / (x1 - x0);
        const double x2 = x1 - f1 / slope;
        const double f2 = z(x2);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        res.x = x1;
        res.f = f1;
        if (f1 == 0.0) {
            res.status = SecantStatus::Converged;
            return res;
        }
        const double slope2 = (f1 - f0) / (x1 - x0);
        if (std::abs(f1 * slope2) <= eps) {
            res.status = SecantStatus::Converged;
            return res;
        }
    }
    res.status = SecantStatus::MaxIters;
    return res;
}

// ---------------------------------------------------------------------------
// Brent's method
// ---------------------------------------------------------------------------

enum class BrentStatus { Converged, NoBracket, MaxIters };

struct BrentResult {
    double x = 0.0;
    double f = 0.0;
    int iters = 0;
    BrentStatus status = BrentStatus::MaxIters;
};

// Root of f on [a, b] given f(a) f(b) <= 0. Combines bisection, secant and
// inverse quadratic interpolation; the iterate never leaves the bracket.
// Converges when |f| <= f_tol or when the bracket shrinks below the
// machine-scaled x tolerance.
template <class F>
BrentResult brent(F&& f, double a, double b, double f_tol, double x_tol, int max_iters) {
    BrentResult res;
    double fa = f(a);
    double fb = f(b);
    if (fa * fb > 0.0) {
        res.status = BrentStatus::NoBracket;
        res.x = std::abs(fa) < std::abs(fb) ? a : b;
        res.f = std::abs(fa) < std::abs(fb) ? fa : fb;
        return res;
    }

    double c = a, fc = fa;
    double d = b - a, e = b - a;
    for (int iter = 0; iter < max_iters; ++iter) {
        res.iters = iter + 1;
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 1.0e-15 * std::abs(b) + 0.5 * x_tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || std::abs(fb) <= f_tol || fb == 0.0) {
            res.x = b;
            res.f = fb;
            res.status = BrentStatus::Converged;
            return res;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    res.x = b;
    res.f = fb;
    res.status = BrentStatus::MaxIters;
    return res;
}

}  // namespace aerocap
