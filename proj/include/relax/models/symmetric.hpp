#pragma once

#include <functional>

#include "relax/model.hpp"

namespace relax {

/// Flux relaxation for a symmetric system of n conservation laws with
/// gradient flux f(u) = DPhi(u)^T.
///
/// Relaxed system in U = (u, alpha), alpha in R^n:
///   F(U) = (alpha + DE(u)^T, 0),  R(U) = (0, h(u) - alpha),
///   h(u) = -DSigma(u)^T,  Sigma = Efun - Phi.
struct SymmetricParams {
    int n = 0;

    std::function<double(const VectorXd&)> Phi;            // convex flux potential
    std::function<VectorXd(const VectorXd&)> Phi_grad;
    std::function<MatrixXd(const VectorXd&)> Phi_hess;     // gamma I < . < Gamma I

    std::function<double(const VectorXd&)> Efun;           // relaxation potential
    std::function<VectorXd(const VectorXd&)> Efun_grad;
    std::function<MatrixXd(const VectorXd&)> Efun_hess;    // E I <= . <= (E+delta) I

    double gamma = 0.0;
    double Gamma = 0.0;
    double E = 0.0;
    double delta = 0.0; // E > Gamma > gamma > delta > 0

    std::function<VectorXd(const VectorXd&)> g; // source on the u components

    /// n = 2, Phi = |u|^2/2 + 0.1 sum log cosh(2 u_i) (gamma = 0.9, Gamma = 1.5),
    /// Efun = |u|^2 + 0.05 sum log cosh(u_i) (E = 2, delta = 0.05), g(u) = -u/4.
    static SymmetricParams defaults();
};

/// j(alpha) = -v where v solves DSigma(v)^T = -alpha; its Jacobian is
/// symmetric positive definite with eigenvalues in
/// (1/(E+delta-gamma), 1/(E-Gamma)).
VectorXd symmetric_j(const SymmetricParams& params, const VectorXd& alpha);

ModelDescriptor build_symmetric(const SymmetricParams& params);

} // namespace relax
