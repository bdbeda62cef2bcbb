#pragma once

#include <functional>

#include "relax/model.hpp"

namespace relax {

/// Pressure-relaxation model for isentropic reactive flow in Lagrangian
/// coordinates.
///
/// Balance law in (specific volume v, velocity u, reactant mass fraction Z):
///   v_t - u_x = 0,  u_t + P(v,Z)_x = 0,  Z_t = -K phi(Theta(v,Z)) Z,
/// relaxed through an auxiliary variable alpha:
///   U = (v, u, Z, alpha),  F(U) = (-u, -(alpha + E v), 0, 0),
///   R(U) = (0, 0, 0, h(v,Z) - alpha),  h(v,Z) = -P(v,Z) - E v.
struct CombustionParams {
    std::function<double(double, double)> P;   // pressure P(v, Z)
    std::function<double(double, double)> P_v; // -P_v in (gamma, Gamma)
    std::function<double(double, double)> P_Z; // |P_Z| <= Cbar

    // Optional closed forms; quadrature / finite-difference fallbacks are used
    // when absent.
    std::function<double(double, double)> P_int;    // int_0^v P(t,Z) dt
    std::function<double(double, double)> P_Z_int;  // int_0^v P_Z(t,Z) dt
    std::function<double(double, double)> P_ZZ_int; // int_0^v P_ZZ(t,Z) dt, |.| <= Cbar

    std::function<double(double, double)> Theta; // temperature Theta(v, Z)
    std::function<double(double)> phi;           // reaction rate factor, >= 0
    double K = 1.0;                              // reaction rate constant

    double gamma = 0.0;
    double Gamma = 0.0;
    double E = 0.0; // E > Gamma
    double Cbar = 0.0;

    // Entropy offset in Z with B'' > m on [0,1]; defaulted to
    // B(Z) = (m+1) Z^2 / 2 when absent, with m from the structural constants.
    std::function<double(double)> B;
    std::function<double(double)> B_prime;
    std::function<double(double)> B_prime2;

    /// P(v,Z) = -v + 0.2 Z exp(-v^2), Theta = 1 + 0.5 tanh v + 0.3 Z,
    /// phi = softplus(theta - 1) with width 0.05, K = 1,
    /// gamma = 0.5, Gamma = 1.5, E = 2, Cbar = 0.25.
    static CombustionParams defaults();
};

/// Constants derived from (gamma, Gamma, E, Cbar) that control the entropy
/// construction: Ehat = E - gamma/2; mhat, m lower bounds for B''; Lambda the
/// conditioning bound of the (alpha, Z) entropy block.
struct CombustionEntropyConstants {
    double Ehat;
    double mhat;
    double m;
    double Lambda;
};

CombustionEntropyConstants combustion_entropy_constants(const CombustionParams& params);

/// v solving h(v, Z) = alpha with h(v,Z) = -P(v,Z) - E v; requires Z in [0,1].
double combustion_j(const CombustionParams& params, double alpha, double Z);

ModelDescriptor build_combustion(const CombustionParams& params);

} // namespace relax
