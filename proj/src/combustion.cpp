#include "relax/models/combustion.hpp"

#include <cmath>
#include <sstream>

#include "relax/quadrature.hpp"
#include "relax/rootfind.hpp"

namespace relax {

namespace {

std::string witness2(const char* inequality, double v, double Z, double value) {
    std::ostringstream os;
    os << "combustion: " << inequality << " violated at (v=" << v << ", Z=" << Z
       << ") (value " << value << ")";
    return os.str();
}

SampleBox vz_box(int count) {
    SampleBox b;
    b.lo.resize(2);
    b.hi.resize(2);
    b.lo << -2.0, 0.0;
    b.hi << 2.0, 1.0;
    b.count = count;
    return b;
}

void validate(const CombustionParams& p, const CombustionEntropyConstants& c) {
    if (!p.P || !p.P_v || !p.P_Z || !p.Theta || !p.phi)
        throw ConstructionError("combustion: P, P_v, P_Z, Theta, phi are required");
    if (!(p.gamma > 0.0) || !(p.Gamma > p.gamma) || !(p.E > p.Gamma))
        throw ConstructionError("combustion: 0 < gamma < Gamma < E required");
    if (!(p.Cbar > 0.0))
        throw ConstructionError("combustion: Cbar > 0 required");
    if (!(p.K >= 0.0))
        throw ConstructionError("combustion: K >= 0 required");

    HaltonSampler sampler(vz_box(2000));
    for (int i = 0; i < 2000; ++i) {
        const VectorXd x = sampler.point(i);
        const double v = x[0], Z = x[1];
        const double mpv = -p.P_v(v, Z);
        if (!(mpv >= p.gamma - 1e-12))
            throw ConstructionError(witness2("gamma < -P_v", v, Z, mpv));
        if (!(mpv <= p.Gamma + 1e-12))
            throw ConstructionError(witness2("-P_v < Gamma", v, Z, mpv));
        const double pz = p.P_Z(v, Z);
        if (!(std::abs(pz) <= p.Cbar))
            throw ConstructionError(witness2("|P_Z| <= Cbar", v, Z, pz));
        const double th = p.phi(p.Theta(v, Z));
        if (!(th >= 0.0))
            throw ConstructionError(witness2("phi(Theta) >= 0", v, Z, th));
    }

    if (p.B) {
        if (!p.B_prime2)
            throw ConstructionError("combustion: custom B requires B_prime2");
        for (int i = 0; i <= 100; ++i) {
            const double Z = i / 100.0;
            const double b2 = p.B_prime2(Z);
            if (!(b2 > c.m)) {
                std::ostringstream os;
                os << "combustion: B''(Z) > m violated at Z=" << Z << " (B''=" << b2
                   << ", m=" << c.m << ")";
                throw ConstructionError(os.str());
            }
        }
    }
}

} // namespace

CombustionEntropyConstants combustion_entropy_constants(const CombustionParams& p) {
    CombustionEntropyConstants c;
    c.Ehat = p.E - 0.5 * p.gamma;
    const double r = p.Cbar * p.Cbar / (p.E - p.Gamma);
    c.mhat = (r * r + 1.0) * 2.0 * (p.E - p.gamma) * c.Ehat / p.gamma;
    c.m = c.mhat + p.Cbar * (1.0 + p.Cbar / (p.E - p.Gamma));
    c.Lambda = 2.0 * c.m + (p.Gamma - 0.5 * p.gamma) / ((p.E - p.Gamma) * c.Ehat) +
               p.Cbar * p.Cbar / (p.E - p.Gamma);
    return c;
}

CombustionParams CombustionParams::defaults() {
    constexpr double a = 1.0, cz = 0.2, w = 0.05;
    const double half_sqrt_pi = 0.5 * std::sqrt(M_PI);
    CombustionParams p;
    p.P = [=](double v, double Z) { return -a * v + cz * Z * std::exp(-v * v); };
    p.P_v = [=](double v, double Z) { return -a - 2.0 * cz * Z * v * std::exp(-v * v); };
    p.P_Z = [=](double v, double) { return cz * std::exp(-v * v); };
    p.P_int = [=](double v, double Z) {
        return -0.5 * a * v * v + cz * Z * half_sqrt_pi * std::erf(v);
    };
    p.P_Z_int = [=](double v, double) { return cz * half_sqrt_pi * std::erf(v); };
    p.P_ZZ_int = [](double, double) { return 0.0; };
    p.Theta = [](double v, double Z) { return 1.0 + 0.5 * std::tanh(v) + 0.3 * Z; };
    p.phi = [=](double th) {
        const double x = (th - 1.0) / w;
        return x > 0.0 ? w * (x + std::log1p(std::exp(-x)))
                       : w * std::log1p(std::exp(x));
    };
    p.K = 1.0;
    p.gamma = 0.5;
    p.Gamma = 1.5;
    p.E = 2.0;
    p.Cbar = 0.25;
    return p;
}

double combustion_j(const CombustionParams& params, double alpha, double Z) {
    if (!(Z >= 0.0 && Z <= 1.0))
        throw ContractViolation("combustion_j: Z in [0,1] required");
    auto h = [&](double v) { return -params.P(v, Z) - params.E * v; };
    auto dh = [&](double v) { return -params.P_v(v, Z) - params.E; };
    return invert_monotone(h, dh, alpha, 0.0);
}

ModelDescriptor build_combustion(const CombustionParams& params) {
    const CombustionEntropyConstants c = combustion_entropy_constants(params);
    validate(params, c);
    CombustionParams p = params;
    const double E = p.E;

    if (!p.P_int)
        p.P_int = [p](double v, double Z) {
            return integrate([&](double t) { return p.P(t, Z); }, 0.0, v);
        };
    if (!p.P_Z_int)
        p.P_Z_int = [p](double v, double Z) {
            return integrate([&](double t) { return p.P_Z(t, Z); }, 0.0, v);
        };
    if (!p.B) {
        const double b2 = c.m + 1.0;
        p.B = [b2](double Z) { return 0.5 * b2 * Z * Z; };
        p.B_prime = [b2](double Z) { return b2 * Z; };
        p.B_prime2 = [b2](double) { return b2; };
    }
    if (!p.B_prime)
        p.B_prime = [p](double Z) { return fd::derivative(p.B, Z); };
    if (!p.B_prime2)
        p.B_prime2 = [p](double Z) { return fd::derivative(p.B_prime, Z); };

    auto h = [p](double v, double Z) { return -p.P(v, Z) - p.E * v; };
    auto j = [p](double alpha, double Z) { return combustion_j(p, alpha, Z); };

    ModelDescriptor m;
    m.name = "combustion";
    m.n = 3;
    m.N = 4;
    m.component_names = {"v", "u", "Z", "alpha"};
    m.conserved_names = {"v", "u", "Z"};

    m.flux = [E](const VectorXd& U) {
        VectorXd F(4);
        F << -U[1], -(U[3] + E * U[0]), 0.0, 0.0;
        return F;
    };
    m.relaxation = [h](const VectorXd& U) {
        VectorXd R = VectorXd::Zero(4);
        R[3] = h(U[0], U[2]) - U[3];
        return R;
    };
    m.source = [p](const VectorXd& U) {
        VectorXd G = VectorXd::Zero(4);
        G[2] = -p.K * p.phi(p.Theta(U[0], U[2])) * U[2];
        return G;
    };
    m.maxwellian = [h](const VectorXd& u) {
        VectorXd M(4);
        M << u[0], u[1], u[2], h(u[0], u[2]);
        return M;
    };
    m.projection = MatrixXd::Zero(3, 4);
    m.projection(0, 0) = m.projection(1, 1) = m.projection(2, 2) = 1.0;

    // H(v,u,Z,alpha) = u^2/2 - int_{h(0,Z)}^alpha j(.,Z) + alpha v + E v^2/2 + B(Z);
    // the integral reduces by the substitution xi = h(w,Z) to
    // v* alpha + P_int(v*,Z) + E v*^2/2 with v* = j(alpha,Z).
    m.entropy = [p, j, E](const VectorXd& U) {
        const double v = U[0], u = U[1], Z = U[2], a = U[3];
        const double vs = j(a, Z);
        return 0.5 * u * u - (vs * a + p.P_int(vs, Z) + 0.5 * E * vs * vs) +
               a * v + 0.5 * E * v * v + p.B(Z);
    };
    m.entropy_flux = [E](const VectorXd& U) {
        return -(U[3] + E * U[0]) * U[1];
    };
    m.entropy_grad = [p, j, E](const VectorXd& U) {
        const double Z = U[2], a = U[3];
        const double vs = j(a, Z);
        RowVectorXd g(4);
        g << a + E * U[0], U[1], p.B_prime(Z) - p.P_Z_int(vs, Z), U[0] - vs;
        return g;
    };
    m.entropy_hess = [p, j, E](const VectorXd& U) {
        const double Z = U[2], a = U[3];
        const double vs = j(a, Z);
        const double hv = -p.P_v(vs, Z) - E; // < 0
        const double ja = 1.0 / hv;
        const double jz = p.P_Z(vs, Z) / hv;
        const double pzz_int =
            p.P_ZZ_int ? p.P_ZZ_int(vs, Z)
                       : fd::derivative([&](double z) { return p.P_Z_int(vs, z); }, Z);
        MatrixXd H = MatrixXd::Zero(4, 4);
        H(0, 0) = E;
        H(0, 3) = H(3, 0) = 1.0;
        H(1, 1) = 1.0;
        H(2, 2) = p.B_prime2(Z) - (p.P_Z(vs, Z) * jz + pzz_int);
        H(2, 3) = H(3, 2) = -jz;
        H(3, 3) = -ja;
        return H;
    };

    // Convexity splits as (u^2/2 + gamma v^2/4 + psi(alpha,Z)) plus the
    // rank-one completion (alpha + Ehat v)^2 / (2 Ehat), whose nonzero
    // eigenvalue is (Ehat^2 + 1)/Ehat; psi is conditioned within
    // [1/Lambda, Lambda].
    m.constants.gamma = p.gamma;
    m.constants.Gamma = p.Gamma;
    m.constants.E = E;
    m.constants.mu = std::min({0.5 * p.gamma, 1.0, 1.0 / c.Lambda});
    m.constants.mu_prime = std::max({0.5 * p.gamma, 1.0, c.Lambda}) +
                           (c.Ehat * c.Ehat + 1.0) / c.Ehat;
    m.constants.nu = 1.0 / (E - p.gamma);
    m.constants.flux_bound = std::sqrt(E * E + 1.0);

    m.affine_relaxation = true;
    const double speed = std::sqrt(E);
    m.wave_speed = [speed](const VectorXd&) { return speed; };

    m.claims = {HypothesisId::H1, HypothesisId::H2, HypothesisId::H3,
                HypothesisId::H4, HypothesisId::H5, HypothesisId::H6,
                HypothesisId::H7, HypothesisId::H7star, HypothesisId::H9};

    m.default_u_box.lo.resize(3);
    m.default_u_box.hi.resize(3);
    m.default_u_box.lo << -1.0, -1.0, 0.0;
    m.default_u_box.hi << 1.0, 1.0, 1.0;
    m.default_U_box.lo.resize(4);
    m.default_U_box.hi.resize(4);
    m.default_U_box.lo << -1.0, -1.0, 0.0, -1.5;
    m.default_U_box.hi << 1.0, 1.0, 1.0, 1.5;
    return m;
}

} // namespace relax
