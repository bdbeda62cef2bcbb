#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>

namespace relax::fd {

/// Central-difference step, per component: h = max(1e-5, 1e-7*|x|).
inline double step(double x) {
    return std::max(1e-5, 1e-7 * std::abs(x));
}

inline Eigen::RowVectorXd gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x) {
    Eigen::RowVectorXd g(x.size());
    Eigen::VectorXd xp = x, xm = x;
    for (int i = 0; i < x.size(); ++i) {
        const double h = step(x[i]);
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        g[i] = (f(xp) - f(xm)) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    return g;
}

inline Eigen::MatrixXd jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& F,
                                const Eigen::VectorXd& x) {
    Eigen::MatrixXd J;
    Eigen::VectorXd xp = x, xm = x;
    for (int i = 0; i < x.size(); ++i) {
        const double h = step(x[i]);
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        Eigen::VectorXd col = (F(xp) - F(xm)) / (2.0 * h);
        if (J.size() == 0) J.resize(col.size(), x.size());
        J.col(i) = col;
        xp[i] = x[i];
        xm[i] = x[i];
    }
    return J;
}

/// Hessian as central differences of an analytic/FD gradient, symmetrized.
inline Eigen::MatrixXd
hessian_from_gradient(const std::function<Eigen::RowVectorXd(const Eigen::VectorXd&)>& grad,
                      const Eigen::VectorXd& x) {
    const int k = static_cast<int>(x.size());
    Eigen::MatrixXd H(k, k);
    Eigen::VectorXd xp = x, xm = x;
    for (int i = 0; i < k; ++i) {
        const double h = step(x[i]);
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        H.row(i) = (grad(xp) - grad(xm)) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    return 0.5 * (H + H.transpose());
}

inline double derivative(const std::function<double(double)>& f, double x) {
    const double h = step(x);
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace relax::fd
