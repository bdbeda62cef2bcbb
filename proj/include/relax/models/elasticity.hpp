#pragma once

#include <functional>

#include "relax/model.hpp"

namespace relax {

/// Stress-relaxation model for one-dimensional elastodynamics.
///
/// Balance law in (strain u, velocity v):
///   u_t - v_x = 0,  v_t - sigma(u)_x = g2,
/// relaxed through an auxiliary stress variable alpha:
///   U = (u, v, alpha),  F(U) = (-v, -(alpha + E u), 0),
///   R(U) = (0, 0, h(u) - alpha),  h(u) = sigma(u) - E u.
struct ElasticityParams {
    enum class SourceKind { weakly_dissipative, lipschitz };

    std::function<double(double)> sigma;       // stress, sigma(0) = 0
    std::function<double(double)> sigma_prime; // in (gamma, Gamma)
    // Closed-form antiderivative of sigma from 0, if available. When absent a
    // memoized quadrature cache is built instead.
    std::function<double(double)> sigma_int;

    double gamma = 0.0;
    double Gamma = 0.0;
    double E = 0.0; // relaxed stress stiffness, E > Gamma

    SourceKind source_kind = SourceKind::weakly_dissipative;
    std::function<double(double)> g2_velocity;       // weakly_dissipative: g2(v)
    std::function<double(double, double)> g2_general; // lipschitz: g2(u, v)

    /// sigma(u) = u + 0.5 sin u, gamma = 0.5, Gamma = 1.5, E = 2,
    /// g2(v) = -v (weakly dissipative).
    static ElasticityParams defaults();
};

/// u solving sigma(u) - E u = alpha; strictly decreasing in alpha.
double elasticity_h_inverse(const ElasticityParams& params, double alpha);

/// Builds the full descriptor; throws ConstructionError naming the violated
/// inequality and a witness point if the parameter invariants fail on the
/// validation samples.
ModelDescriptor build_elasticity(const ElasticityParams& params);

} // namespace relax
