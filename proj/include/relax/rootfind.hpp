#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "relax/errors.hpp"

namespace relax {

struct RootOptions {
    double rel_tol = 1e-12; // residual tolerance, scaled by max(1, |target|)
    int max_iter = 100;
};

/// Solves f(x) = target for strictly monotone f with derivative bounded away
/// from zero. Expands a bracket around x0, then runs Newton safeguarded by
/// bisection: any Newton iterate leaving the bracket is replaced by the
/// bracket midpoint.
inline double invert_monotone(const std::function<double(double)>& f,
                              const std::function<double(double)>& df,
                              double target, double x0 = 0.0,
                              const RootOptions& opt = {}) {
    const double tol = opt.rel_tol * std::max(1.0, std::abs(target));
    auto g = [&](double x) { return f(x) - target; };

    double a = x0, fa = g(a);
    if (std::abs(fa) <= tol) return a;

    // Bracket by doubling steps in the descent direction of |g|.
    const double dfa = df(a);
    double dir = (dfa != 0.0) ? -fa / dfa : (fa > 0 ? -1.0 : 1.0);
    dir = (dir >= 0.0) ? 1.0 : -1.0;
    double stepsz = std::max(1.0, std::abs(fa) / std::max(1e-8, std::abs(dfa)));
    double b = a, fb = fa;
    bool bracketed = false;
    for (int k = 0; k < 200; ++k) {
        b = a + dir * stepsz;
        fb = g(b);
        if (fa * fb <= 0.0) { bracketed = true; break; }
        stepsz *= 2.0;
    }
    if (!bracketed)
        throw NumericError("invert_monotone: failed to bracket root");
    if (a > b) { std::swap(a, b); std::swap(fa, fb); }

    double x = 0.5 * (a + b);
    for (int it = 0; it < opt.max_iter; ++it) {
        double fx = g(x);
        if (std::abs(fx) <= tol) return x;
        if (fa * fx <= 0.0) { b = x; fb = fx; } else { a = x; fa = fx; }

        double d = df(x);
        double xn = (d != 0.0) ? x - fx / d : a - 1.0; // force bisection
        if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
        x = xn;
    }
    throw NumericError("invert_monotone: iteration cap reached");
}

/// Damped Newton for F(v) = 0 with backtracking on |F|^2.
inline Eigen::VectorXd
newton_system(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& F,
              const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& J,
              Eigen::VectorXd v, double scale = 1.0, const RootOptions& opt = {}) {
    const double tol = opt.rel_tol * std::max(1.0, scale);
    Eigen::VectorXd r = F(v);
    for (int it = 0; it < opt.max_iter; ++it) {
        if (r.norm() <= tol) return v;
        Eigen::VectorXd dv = J(v).partialPivLu().solve(-r);
        double lambda = 1.0;
        const double r0 = r.squaredNorm();
        for (int bt = 0; bt < 40; ++bt) {
            Eigen::VectorXd vn = v + lambda * dv;
            Eigen::VectorXd rn = F(vn);
            if (rn.squaredNorm() < r0 || rn.norm() <= tol) {
                v = vn;
                r = rn;
                break;
            }
            lambda *= 0.5;
            if (bt == 39)
                throw NumericError("newton_system: line search stalled");
        }
    }
    if (r.norm() <= tol) return v;
    throw NumericError("newton_system: iteration cap reached");
}

} // namespace relax
