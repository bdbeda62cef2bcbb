#pragma once

#include <cmath>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "relax/errors.hpp"

namespace relax {

/// 7-point Gauss-Legendre on [a, b].
inline double gauss7(const std::function<double(double)>& f, double a, double b) {
    // nodes/weights on [-1, 1]
    static const double x[7] = {
        -0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
        0.0,
        0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
    static const double w[7] = {
        0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
        0.4179591836734694,
        0.3818300505051189, 0.2797053914892766, 0.1294849661688697};
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 7; ++i) s += w[i] * f(c + h * x[i]);
    return h * s;
}

namespace detail {
inline double adapt(const std::function<double(double)>& f, double a, double b,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gauss7(f, a, m);
    const double right = gauss7(f, m, b);
    const double delta = left + right - whole;
    if (std::abs(delta) <= tol || depth >= 48) return left + right + delta / 127.0;
    return adapt(f, a, m, left, 0.5 * tol, depth + 1) +
           adapt(f, m, b, right, 0.5 * tol, depth + 1);
}
} // namespace detail

/// Adaptive composite Gauss-Legendre (order 7) with absolute tolerance.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-11) {
    if (a == b) return 0.0;
    return detail::adapt(f, a, b, gauss7(f, a, b), abs_tol, 0);
}

/// Memoized antiderivative x -> integral of f from 0 to x on a lazily grown
/// knot grid. Safe under concurrent reads; knot growth is serialized.
class AntiderivativeCache {
public:
    explicit AntiderivativeCache(std::function<double(double)> f,
                                 double knot_spacing = 0.5,
                                 double abs_tol = 1e-11)
        : f_(std::move(f)), dk_(knot_spacing), tol_(abs_tol) {
        pos_.push_back(0.0);
        neg_.push_back(0.0);
    }

    double operator()(double x) const {
        const int k = static_cast<int>(std::floor(std::abs(x) / dk_));
        const double base = knot_sum(k, x >= 0.0);
        const double knot = (x >= 0.0 ? 1.0 : -1.0) * k * dk_;
        return base + integrate(f_, knot, x, tol_);
    }

private:
    double knot_sum(int k, bool positive) const {
        {
            std::shared_lock lk(mtx_);
            const auto& v = positive ? pos_ : neg_;
            if (k < static_cast<int>(v.size())) return v[k];
        }
        std::unique_lock lk(mtx_);
        auto& v = positive ? pos_ : neg_;
        const double sgn = positive ? 1.0 : -1.0;
        while (static_cast<int>(v.size()) <= k) {
            const int m = static_cast<int>(v.size());
            v.push_back(v.back() +
                        integrate(f_, sgn * (m - 1) * dk_, sgn * m * dk_, tol_));
        }
        return v[k];
    }

    std::function<double(double)> f_;
    double dk_;
    double tol_;
    mutable std::shared_mutex mtx_;
    mutable std::vector<double> pos_; // integral 0 -> +k*dk
    mutable std::vector<double> neg_; // integral 0 -> -k*dk
};

} // namespace relax
