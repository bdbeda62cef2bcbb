#include "relax/models/elasticity.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "relax/quadrature.hpp"
#include "relax/rootfind.hpp"

namespace relax {

namespace {

std::string witness1(const char* inequality, double x, double value) {
    std::ostringstream os;
    os << "elasticity: " << inequality << " violated at u=" << x
       << " (value " << value << ")";
    return os.str();
}

void validate(const ElasticityParams& p) {
    if (!p.sigma || !p.sigma_prime)
        throw ConstructionError("elasticity: sigma and sigma_prime are required");
    if (!(p.gamma > 0.0) || !(p.Gamma > p.gamma))
        throw ConstructionError("elasticity: 0 < gamma < Gamma required");
    if (!(p.E > p.Gamma))
        throw ConstructionError("elasticity: E > Gamma required");
    if (std::abs(p.sigma(0.0)) > 1e-12)
        throw ConstructionError(witness1("sigma(0) = 0", 0.0, p.sigma(0.0)));
    if (p.source_kind == ElasticityParams::SourceKind::weakly_dissipative &&
        !p.g2_velocity)
        throw ConstructionError("elasticity: weakly_dissipative source needs g2_velocity");
    if (p.source_kind == ElasticityParams::SourceKind::lipschitz && !p.g2_general)
        throw ConstructionError("elasticity: lipschitz source needs g2_general");

    // Slope condition over a widened strain range. The declared bracket may
    // be the sharp envelope of sigma', so attainment up to 1e-12 is accepted.
    HaltonSampler sampler(SampleBox::cube(1, -2.0, 2.0, 2000));
    for (int i = 0; i < 2000; ++i) {
        const double u = sampler.point(i)[0];
        const double sp = p.sigma_prime(u);
        if (!(sp >= p.gamma - 1e-12))
            throw ConstructionError(witness1("gamma < sigma'(u)", u, sp));
        if (!(sp <= p.Gamma + 1e-12))
            throw ConstructionError(witness1("sigma'(u) < Gamma", u, sp));
    }
}

} // namespace

ElasticityParams ElasticityParams::defaults() {
    ElasticityParams p;
    p.sigma = [](double u) { return u + 0.5 * std::sin(u); };
    p.sigma_prime = [](double u) { return 1.0 + 0.5 * std::cos(u); };
    p.sigma_int = [](double u) { return 0.5 * u * u + 0.5 * (1.0 - std::cos(u)); };
    p.gamma = 0.5;
    p.Gamma = 1.5;
    p.E = 2.0;
    p.source_kind = SourceKind::weakly_dissipative;
    p.g2_velocity = [](double v) { return -v; };
    return p;
}

double elasticity_h_inverse(const ElasticityParams& params, double alpha) {
    auto h = [&](double u) { return params.sigma(u) - params.E * u; };
    auto dh = [&](double u) { return params.sigma_prime(u) - params.E; };
    return invert_monotone(h, dh, alpha, 0.0);
}

ModelDescriptor build_elasticity(const ElasticityParams& params) {
    validate(params);
    const ElasticityParams p = params;
    const double E = p.E;

    // Antiderivative of sigma: closed form if supplied, memoized quadrature
    // otherwise (evaluated per cell per step by the entropy).
    std::function<double(double)> Sint = p.sigma_int;
    if (!Sint) {
        auto cache = std::make_shared<AntiderivativeCache>(p.sigma);
        Sint = [cache](double u) { return (*cache)(u); };
    }

    auto h = [p](double u) { return p.sigma(u) - p.E * u; };
    auto h_inv = [p](double alpha) { return elasticity_h_inverse(p, alpha); };

    ModelDescriptor m;
    m.name = "elasticity";
    m.n = 2;
    m.N = 3;
    m.component_names = {"u", "v", "alpha"};
    m.conserved_names = {"u", "v"};

    m.flux = [E](const VectorXd& U) {
        VectorXd F(3);
        F << -U[1], -(U[2] + E * U[0]), 0.0;
        return F;
    };
    m.relaxation = [h](const VectorXd& U) {
        VectorXd R(3);
        R << 0.0, 0.0, h(U[0]) - U[2];
        return R;
    };
    if (p.source_kind == ElasticityParams::SourceKind::weakly_dissipative)
        m.source = [p](const VectorXd& U) {
            VectorXd G(3);
            G << 0.0, p.g2_velocity(U[1]), 0.0;
            return G;
        };
    else
        m.source = [p](const VectorXd& U) {
            VectorXd G(3);
            G << 0.0, p.g2_general(U[0], U[1]), 0.0;
            return G;
        };
    m.maxwellian = [h](const VectorXd& u) {
        VectorXd M(3);
        M << u[0], u[1], h(u[0]);
        return M;
    };
    m.projection = MatrixXd::Zero(2, 3);
    m.projection(0, 0) = 1.0;
    m.projection(1, 1) = 1.0;

    // H(u, v, alpha) = v^2/2 + E u^2/2 + alpha u - int_0^alpha hinv; the
    // integral reduces by the substitution xi = h(w) to
    // u* alpha - Sint(u*) + E u*^2 / 2 with u* = hinv(alpha).
    m.entropy = [E, Sint, h_inv](const VectorXd& U) {
        const double u = U[0], v = U[1], a = U[2];
        const double us = h_inv(a);
        return 0.5 * v * v + 0.5 * E * u * u + a * u -
               (us * a - Sint(us) + 0.5 * E * us * us);
    };
    m.entropy_flux = [E](const VectorXd& U) {
        return -(U[2] + E * U[0]) * U[1];
    };
    m.entropy_grad = [E, h_inv](const VectorXd& U) {
        RowVectorXd g(3);
        g << E * U[0] + U[2], U[1], U[0] - h_inv(U[2]);
        return g;
    };
    m.entropy_hess = [p, h_inv](const VectorXd& U) {
        MatrixXd H = MatrixXd::Zero(3, 3);
        const double us = h_inv(U[2]);
        H(0, 0) = p.E;
        H(0, 2) = H(2, 0) = 1.0;
        H(1, 1) = 1.0;
        H(2, 2) = 1.0 / (p.E - p.sigma_prime(us));
        return H;
    };

    // Entropy Hessian splits into the v-eigenvalue 1 and the (u, alpha)
    // block [[E, 1], [1, c]] with c = 1/(E - sigma') in [1/(E-gamma), 1/(E-Gamma)];
    // the extreme eigenvalues are monotone in c.
    auto lam_lo = [E](double c) { return 0.5 * (E + c - std::hypot(E - c, 2.0)); };
    auto lam_hi = [E](double c) { return 0.5 * (E + c + std::hypot(E - c, 2.0)); };
    const double cmin = 1.0 / (E - p.gamma), cmax = 1.0 / (E - p.Gamma);
    m.constants.gamma = p.gamma;
    m.constants.Gamma = p.Gamma;
    m.constants.E = E;
    m.constants.mu = std::min(1.0, lam_lo(cmin));
    m.constants.mu_prime = std::max(1.0, lam_hi(cmax));
    m.constants.nu = 1.0 / E;
    m.constants.flux_bound = std::sqrt(E * E + 1.0);

    m.affine_relaxation = true;
    const double speed = std::sqrt(E);
    m.wave_speed = [speed](const VectorXd&) { return speed; };

    m.claims = {HypothesisId::H1, HypothesisId::H2, HypothesisId::H3,
                HypothesisId::H4, HypothesisId::H5, HypothesisId::H6,
                HypothesisId::H7, HypothesisId::H7star};
    m.claims.insert(p.source_kind == ElasticityParams::SourceKind::weakly_dissipative
                        ? HypothesisId::H8
                        : HypothesisId::H9);

    m.default_u_box = SampleBox::cube(2, -1.0, 1.0);
    m.default_U_box = SampleBox::cube(3, -1.0, 1.0);
    return m;
}

} // namespace relax
