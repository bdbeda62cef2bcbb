#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relax/errors.hpp"
#include "relax/finite_diff.hpp"
#include "relax/sampling.hpp"

namespace relax {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

enum class HypothesisId { H1, H2, H3, H4, H5, H6, H7, H7star, H8, H9 };

const char* to_string(HypothesisId id);
HypothesisId hypothesis_from_string(const std::string& s);

/// Structural constants of a relaxation system. Absent means "not claimed".
struct ModelConstants {
    std::optional<double> gamma;      // lower bound on the stiffness-type quantity
    std::optional<double> Gamma;      // upper bound
    std::optional<double> E;          // relaxation stiffness parameter
    std::optional<double> mu;         // lower entropy-Hessian eigenvalue bound
    std::optional<double> mu_prime;   // upper entropy-Hessian eigenvalue bound
    std::optional<double> nu;         // relative-dissipation constant
    std::optional<double> flux_bound; // bound on |DF|
};

/// Complete description of a relaxation system
///   dU/dt + dF(U)/dx = (1/eps) R(U) + G(U),  U in R^N,
/// together with its equilibrium reduction u = P U in R^n, the Maxwellian
/// parameterization M(u), and a convex entropy pair (H, Q).
///
/// Immutable after construction; all callbacks must be pure. Safe to share
/// across threads.
struct ModelDescriptor {
    std::string name;
    int n = 0; // conserved dimension
    int N = 0; // relaxation dimension, N > n

    std::function<VectorXd(const VectorXd&)> flux;       // F : R^N -> R^N
    std::function<VectorXd(const VectorXd&)> relaxation; // R : R^N -> R^N
    std::function<VectorXd(const VectorXd&)> source;     // G : R^N -> R^N
    std::function<VectorXd(const VectorXd&)> maxwellian; // M : R^n -> R^N
    MatrixXd projection;                                 // P : n x N

    std::function<double(const VectorXd&)> entropy;          // H
    std::function<double(const VectorXd&)> entropy_flux;     // Q
    std::function<RowVectorXd(const VectorXd&)> entropy_grad; // DH (row)
    std::function<MatrixXd(const VectorXd&)> entropy_hess;    // optional; FD fallback

    ModelConstants constants;

    // Solver support. affine_relaxation declares the built-in structure
    // R = (0,...,0, h(u) - alpha) with conserved components first, which
    // admits an exact exponential stiff substep.
    bool affine_relaxation = false;
    std::function<double(const VectorXd&)> wave_speed; // local bound on spectral radius of DF

    std::vector<std::string> component_names; // size N
    std::vector<std::string> conserved_names; // size n

    std::set<HypothesisId> claims; // hypotheses this construction asserts
    SampleBox default_u_box;       // u-space sampling region
    SampleBox default_U_box;       // U-space sampling region

    /// Entropy Hessian: analytic if available, central differences of DH otherwise.
    MatrixXd hessian(const VectorXd& U) const {
        if (entropy_hess) return entropy_hess(U);
        return fd::hessian_from_gradient(entropy_grad, U);
    }
};

/// u = P U.
VectorXd project(const ModelDescriptor& model, const VectorXd& U);

/// f(u) = P F(M(u)).
VectorXd equilibrium_flux(const ModelDescriptor& model, const VectorXd& u);

/// g(u) = P G(M(u)).
VectorXd equilibrium_source(const ModelDescriptor& model, const VectorXd& u);

/// eta(u) = H(M(u)).
double equilibrium_entropy(const ModelDescriptor& model, const VectorXd& u);

/// q(u) = Q(M(u)).
double equilibrium_entropy_flux(const ModelDescriptor& model, const VectorXd& u);

/// H(U) - H(M(u_bar)) - DH(M(u_bar)) [U - M(u_bar)]. Nonnegative for
/// uniformly convex H.
double relative_entropy(const ModelDescriptor& model, const VectorXd& U,
                        const VectorXd& u_bar);

/// Q(U) - Q(M(u_bar)) - DH(M(u_bar)) [F(U) - F(M(u_bar))].
double relative_entropy_flux(const ModelDescriptor& model, const VectorXd& U,
                             const VectorXd& u_bar);

/// D(U) = -DH(U) R(U), the entropy dissipation of the stiff term.
double dissipation(const ModelDescriptor& model, const VectorXd& U);

/// Equivalent bracket form -[DH(U)-DH(M(PU))][R(U)-R(M(PU))].
double dissipation_alt(const ModelDescriptor& model, const VectorXd& U);

/// S(U, M(u_bar)) = -[DH(U)-DH(M(u_bar))][G(U)-G(M(u_bar))].
double source_bracket(const ModelDescriptor& model, const VectorXd& U,
                      const VectorXd& u_bar);

} // namespace relax
