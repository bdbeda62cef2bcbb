#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "relax/finite_diff.hpp"
#include "relax/hypotheses.hpp"
#include "relax/models/combustion.hpp"
#include "relax/models/elasticity.hpp"
#include "relax/models/symmetric.hpp"
#include "relax/quadrature.hpp"
#include "relax/sampling.hpp"

using namespace relax;

namespace {

// eigenvalue range of the analytic entropy Hessian over Halton samples
void check_hessian_bounds(const ModelDescriptor& m, int samples) {
    SampleBox box = m.default_U_box;
    box.count = samples;
    HaltonSampler sampler(box);
    const double mu = *m.constants.mu, mup = *m.constants.mu_prime;
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < samples; ++i) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(m.hessian(sampler.point(i)),
                                                   Eigen::EigenvaluesOnly);
        lo = std::min(lo, es.eigenvalues().minCoeff());
        hi = std::max(hi, es.eigenvalues().maxCoeff());
    }
    CAPTURE(m.name);
    CHECK(lo >= mu - 1e-9);
    CHECK(hi <= mup + 1e-9);
}

// analytic gradient/Hessian vs central differences of H / DH
void check_derivative_consistency(const ModelDescriptor& m) {
    SampleBox box = m.default_U_box;
    box.count = 40;
    HaltonSampler sampler(box);
    for (int i = 0; i < 40; ++i) {
        const VectorXd U = sampler.point(i);
        const RowVectorXd g_fd = fd::gradient(m.entropy, U);
        CHECK((g_fd - m.entropy_grad(U)).cwiseAbs().maxCoeff() <= 2e-6);
        if (m.entropy_hess) {
            const MatrixXd h_fd = fd::hessian_from_gradient(m.entropy_grad, U);
            CHECK((h_fd - m.entropy_hess(U)).cwiseAbs().maxCoeff() <= 5e-5);
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// elasticity
// ---------------------------------------------------------------------------

TEST_CASE("elasticity defaults: fixed values of stress and Maxwellian") {
    const auto p = ElasticityParams::defaults();
    const ModelDescriptor m = build_elasticity(p);
    CHECK(p.sigma(1.0) == doctest::Approx(1.4207354924039484).epsilon(1e-15));
    VectorXd u(2);
    u << 1.0, 0.0;
    const VectorXd M = m.maxwellian(u);
    CHECK(M[0] == 1.0);
    CHECK(M[1] == 0.0);
    CHECK(M[2] == doctest::Approx(-0.5792645075960516).epsilon(1e-15));
    CHECK(*m.constants.nu == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(*m.constants.flux_bound == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("elasticity stress inversion round-trips against a bisection oracle") {
    const auto p = ElasticityParams::defaults();
    auto h = [&](double u) { return p.sigma(u) - p.E * u; };
    CHECK(elasticity_h_inverse(p, 0.0) == doctest::Approx(0.0));
    CHECK(elasticity_h_inverse(p, h(0.7)) == doctest::Approx(0.7).epsilon(1e-12));
    // plain bisection, independent of the production root finder
    for (double alpha : {-1.2, -0.3, 0.45, 1.0}) {
        double lo = -5.0, hi = 5.0; // h is decreasing: h(lo) > alpha > h(hi)
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (h(mid) > alpha ? lo : hi) = mid;
        }
        CHECK(elasticity_h_inverse(p, alpha) ==
              doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
    }
    // strict monotone decrease in alpha
    double prev = elasticity_h_inverse(p, -1.5);
    for (double a = -1.4; a <= 1.5; a += 0.1) {
        const double cur = elasticity_h_inverse(p, a);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("elasticity entropy matches its quadrature definition") {
    const auto p = ElasticityParams::defaults();
    const ModelDescriptor m = build_elasticity(p);
    auto hinv = [&](double a) { return elasticity_h_inverse(p, a); };
    HaltonSampler sampler(SampleBox::cube(3, -1.0, 1.0, 30));
    for (int i = 0; i < 30; ++i) {
        const VectorXd U = sampler.point(i);
        // H = v^2/2 + E u^2/2 + alpha u - int_0^alpha hinv(xi) dxi
        const double direct = 0.5 * U[1] * U[1] + 0.5 * p.E * U[0] * U[0] +
                              U[2] * U[0] - integrate(hinv, 0.0, U[2]);
        CHECK(m.entropy(U) == doctest::Approx(direct).epsilon(1e-8));
        // reduced entropy: eta(u, v) = v^2/2 + int_0^u sigma
        VectorXd uv = U.head(2);
        const double eta = 0.5 * U[1] * U[1] + integrate(p.sigma, 0.0, U[0]);
        CHECK(equilibrium_entropy(m, uv) == doctest::Approx(eta).epsilon(1e-8));
        // reduced flux/entropy-flux: f = (-v, -sigma(u)), q = -sigma(u) v
        const VectorXd f = equilibrium_flux(m, uv);
        CHECK(f[0] == doctest::Approx(-U[1]).epsilon(1e-12));
        CHECK(f[1] == doctest::Approx(-p.sigma(U[0])).epsilon(1e-12));
        CHECK(equilibrium_entropy_flux(m, uv) ==
              doctest::Approx(-p.sigma(U[0]) * U[1]).epsilon(1e-12));
    }
}

TEST_CASE("elasticity hessian bounds and derivative consistency") {
    const ModelDescriptor m = build_elasticity(ElasticityParams::defaults());
    check_hessian_bounds(m, 3000);
    check_derivative_consistency(m);
    // default mu from the (u, alpha) block with c = 1/(E - gamma)
    const double c = 1.0 / 1.5;
    const double lam = 0.5 * (2.0 + c - std::hypot(2.0 - c, 2.0));
    CHECK(*m.constants.mu == doctest::Approx(std::min(1.0, lam)).epsilon(1e-14));
    CHECK(*m.constants.mu_prime == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("elasticity parameter validation rejects bad inputs") {
    auto p = ElasticityParams::defaults();
    p.E = 1.4; // must exceed Gamma
    CHECK_THROWS_AS(build_elasticity(p), ConstructionError);

    p = ElasticityParams::defaults();
    p.sigma = [](double u) { return u + 1.0; }; // sigma(0) != 0
    p.sigma_int = nullptr;
    CHECK_THROWS_AS(build_elasticity(p), ConstructionError);

    p = ElasticityParams::defaults();
    p.sigma = [](double u) { return 2.0 * u; }; // slope above Gamma
    p.sigma_prime = [](double) { return 2.0; };
    p.sigma_int = nullptr;
    CHECK_THROWS_WITH_AS(build_elasticity(p),
                         doctest::Contains("sigma'(u) < Gamma"), ConstructionError);
}

TEST_CASE("elasticity without a closed-form stress antiderivative still works") {
    auto p = ElasticityParams::defaults();
    p.sigma_int = nullptr; // force the memoized quadrature path
    const ModelDescriptor m = build_elasticity(p);
    const ModelDescriptor ref = build_elasticity(ElasticityParams::defaults());
    HaltonSampler sampler(SampleBox::cube(3, -1.0, 1.0, 20));
    for (int i = 0; i < 20; ++i) {
        const VectorXd U = sampler.point(i);
        CHECK(m.entropy(U) == doctest::Approx(ref.entropy(U)).epsilon(1e-9));
    }
}

// ---------------------------------------------------------------------------
// combustion
// ---------------------------------------------------------------------------

TEST_CASE("combustion entropy constants match hand evaluation") {
    auto p = CombustionParams::defaults();
    auto c = combustion_entropy_constants(p);
    CHECK(c.Ehat == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(c.mhat == doctest::Approx(10.6640625).epsilon(1e-14));
    CHECK(c.m == doctest::Approx(11.0390625).epsilon(1e-14));
    CHECK(c.Lambda == doctest::Approx(23.631696428571429).epsilon(1e-13));

    p.Cbar = 1.0; // worked example with the same (gamma, Gamma, E)
    c = combustion_entropy_constants(p);
    CHECK(c.Ehat == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(c.mhat == doctest::Approx(52.5).epsilon(1e-14));
    CHECK(c.m == doctest::Approx(55.5).epsilon(1e-14));
}

TEST_CASE("combustion inverse map: linear pressure and round-trips") {
    CombustionParams lin;
    lin.P = [](double v, double) { return -v; };
    lin.P_v = [](double, double) { return -1.0; };
    lin.P_Z = [](double, double) { return 0.0; };
    lin.P_int = [](double v, double) { return -0.5 * v * v; };
    lin.P_Z_int = [](double, double) { return 0.0; };
    lin.P_ZZ_int = [](double, double) { return 0.0; };
    lin.Theta = [](double, double) { return 1.0; };
    lin.phi = [](double) { return 0.0; };
    lin.gamma = 0.5;
    lin.Gamma = 1.5;
    lin.E = 2.0;
    lin.Cbar = 0.25;
    // h(v, Z) = v - 2v = -v, so j(alpha) = -alpha exactly
    for (double a : {-1.0, -0.1, 0.0, 0.7, 2.3})
        CHECK(combustion_j(lin, a, 0.5) == doctest::Approx(-a).epsilon(1e-10));

    const auto p = CombustionParams::defaults();
    auto h = [&](double v, double Z) { return -p.P(v, Z) - p.E * v; };
    for (double Z : {0.0, 0.3, 1.0})
        for (double v : {-0.8, 0.0, 0.55})
            CHECK(combustion_j(p, h(v, Z), Z) == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("combustion inverse map derivative bounds") {
    const auto p = CombustionParams::defaults();
    // dj/dalpha = -1/(E + P_v) in [-1/(E-Gamma), -1/(E-gamma)];
    // |dj/dZ| <= Cbar/(E-Gamma)
    HaltonSampler sampler(SampleBox::cube(2, -1.2, 1.2, 200));
    for (int i = 0; i < 200; ++i) {
        const VectorXd x = sampler.point(i);
        const double a = x[0], Z = 0.5 + 0.4 * x[1] / 1.2;
        const double ja = fd::derivative(
            [&](double t) { return combustion_j(p, t, Z); }, a);
        CHECK(ja <= -1.0 / (p.E - p.gamma) + 1e-7);
        CHECK(ja >= -1.0 / (p.E - p.Gamma) - 1e-7);
        const double jz = fd::derivative(
            [&](double t) { return combustion_j(p, a, t); }, Z);
        CHECK(std::abs(jz) <= p.Cbar / (p.E - p.Gamma) + 1e-7);
    }
}

TEST_CASE("combustion entropy matches its quadrature definition") {
    const auto p = CombustionParams::defaults();
    const ModelDescriptor m = build_combustion(p);
    const double mB = combustion_entropy_constants(p).m;
    HaltonSampler sampler(SampleBox::cube(4, 0.0, 1.0, 25));
    for (int i = 0; i < 25; ++i) {
        const VectorXd x = sampler.point(i);
        const double v = 2.0 * x[0] - 1.0, u = 2.0 * x[1] - 1.0, Z = x[2],
                     alpha = 3.0 * x[3] - 1.5;
        // reduced entropy: eta = u^2/2 - int_0^v P(t, Z) dt + B(Z)
        VectorXd uvec(3);
        uvec << v, u, Z;
        const double eta = 0.5 * u * u -
                           integrate([&](double t) { return p.P(t, Z); }, 0.0, v) +
                           0.5 * (mB + 1.0) * Z * Z;
        CHECK(equilibrium_entropy(m, uvec) == doctest::Approx(eta).epsilon(1e-8));
        CHECK(equilibrium_entropy_flux(m, uvec) ==
              doctest::Approx(p.P(v, Z) * u).epsilon(1e-10));
        // off-manifold: dH/dalpha = v - j(alpha, Z)
        VectorXd U(4);
        U << v, u, Z, alpha;
        const double h = -p.P(v, Z) - p.E * v;
        VectorXd Ueq(4);
        Ueq << v, u, Z, h;
        const double lifted =
            m.entropy(Ueq) +
            integrate([&](double xi) { return v - combustion_j(p, xi, Z); }, h, alpha);
        CHECK(m.entropy(U) == doctest::Approx(lifted).epsilon(1e-8));
    }
}

TEST_CASE("combustion hessian bounds, conditioning block, derivatives") {
    const auto p = CombustionParams::defaults();
    const ModelDescriptor m = build_combustion(p);
    check_hessian_bounds(m, 3000);
    check_derivative_consistency(m);

    // the (alpha, Z) block after removing the velocity completion has
    // condition bounded by Lambda
    const auto c = combustion_entropy_constants(p);
    SampleBox box = m.default_U_box;
    box.count = 500;
    HaltonSampler sampler(box);
    for (int i = 0; i < 500; ++i) {
        const MatrixXd H = m.hessian(sampler.point(i));
        MatrixXd psi(2, 2);
        psi << H(3, 3) - 1.0 / c.Ehat, H(3, 2), H(2, 3), H(2, 2);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(psi, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= 1.0 / c.Lambda - 1e-9);
        CHECK(es.eigenvalues().maxCoeff() <= c.Lambda + 1e-9);
    }
}

TEST_CASE("combustion parameter validation rejects bad inputs") {
    auto p = CombustionParams::defaults();
    p.P = [](double v, double) { return -2.0 * v; };
    p.P_v = [](double, double) { return -2.0; }; // -P_v above Gamma
    p.P_int = nullptr;
    p.P_Z = [](double, double) { return 0.0; };
    p.P_Z_int = nullptr;
    p.P_ZZ_int = nullptr;
    CHECK_THROWS_WITH_AS(build_combustion(p), doctest::Contains("-P_v < Gamma"),
                         ConstructionError);

    p = CombustionParams::defaults();
    p.P = [](double v, double Z) { return -v + Z; };
    p.P_Z = [](double, double) { return 1.0; }; // exceeds Cbar = 0.25
    p.P_int = nullptr;
    p.P_Z_int = nullptr;
    p.P_ZZ_int = nullptr;
    CHECK_THROWS_WITH_AS(build_combustion(p), doctest::Contains("|P_Z| <= Cbar"),
                         ConstructionError);

    p = CombustionParams::defaults();
    p.B = [](double Z) { return 0.5 * Z * Z; }; // B'' = 1 below m
    p.B_prime = [](double Z) { return Z; };
    CHECK_THROWS_AS(build_combustion(p), ConstructionError); // missing B_prime2
    p.B_prime2 = [](double) { return 1.0; };
    CHECK_THROWS_AS(build_combustion(p), ConstructionError); // too small
}

TEST_CASE("combustion accepts a sufficiently convex custom entropy offset") {
    auto p = CombustionParams::defaults();
    const double m0 = combustion_entropy_constants(p).m;
    const double c2 = m0 + 2.0;
    p.B = [c2](double Z) { return 0.5 * c2 * Z * Z + Z; };
    p.B_prime = [c2](double Z) { return c2 * Z + 1.0; };
    p.B_prime2 = [c2](double) { return c2; };
    const ModelDescriptor m = build_combustion(p);
    VectorXd u(3);
    u << 0.2, -0.1, 0.6;
    const double eta = 0.5 * 0.01 -
                       integrate([&](double t) { return p.P(t, 0.6); }, 0.0, 0.2) +
                       p.B(0.6);
    CHECK(equilibrium_entropy(m, u) == doctest::Approx(eta).epsilon(1e-8));
}

// ---------------------------------------------------------------------------
// symmetric flux relaxation
// ---------------------------------------------------------------------------

TEST_CASE("symmetric inverse map: quadratic closed form and round-trips") {
    // quadratic potentials: Sigma = 0.75 |u|^2, so j(alpha) = alpha / 1.5
    SymmetricParams q;
    q.n = 2;
    q.Phi = [](const VectorXd& u) { return 0.5 * u.squaredNorm(); };
    q.Phi_grad = [](const VectorXd& u) { return u; };
    q.Phi_hess = [](const VectorXd& u) {
        return MatrixXd::Identity(u.size(), u.size()).eval();
    };
    q.Efun = [](const VectorXd& u) { return 1.25 * u.squaredNorm(); };
    q.Efun_grad = [](const VectorXd& u) { return (2.5 * u).eval(); };
    q.Efun_hess = [](const VectorXd& u) {
        return (2.5 * MatrixXd::Identity(u.size(), u.size())).eval();
    };
    q.gamma = 0.9;
    q.Gamma = 1.2;
    q.E = 2.449;
    q.delta = 0.052;
    q.g = [](const VectorXd& u) { return (-0.25 * u).eval(); };
    VectorXd a(2);
    a << 0.9, -2.4;
    const VectorXd j = symmetric_j(q, a);
    CHECK(j[0] == doctest::Approx(0.9 / 1.5).epsilon(1e-12));
    CHECK(j[1] == doctest::Approx(-2.4 / 1.5).epsilon(1e-12));

    // defaults: -j(h(u)) = u with h = -DSigma
    const auto p = SymmetricParams::defaults();
    HaltonSampler sampler(SampleBox::cube(2, -1.5, 1.5, 50));
    for (int i = 0; i < 50; ++i) {
        const VectorXd u = sampler.point(i);
        const VectorXd alpha = -(p.Efun_grad(u) - p.Phi_grad(u));
        CHECK((-symmetric_j(p, alpha) - u).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("symmetric inverse-map potential is path independent") {
    const auto p = SymmetricParams::defaults();
    const ModelDescriptor m = build_symmetric(p);
    // J(alpha) enters the entropy as H(0, alpha) - E(0); J(0) = 0
    VectorXd zero4 = VectorXd::Zero(4);
    auto J = [&](const VectorXd& a) {
        VectorXd U = VectorXd::Zero(4);
        U.tail(2) = a;
        return m.entropy(U) - m.entropy(zero4);
    };
    VectorXd z2 = VectorXd::Zero(2);
    CHECK(m.entropy(zero4) == doctest::Approx(p.Efun(z2)).epsilon(1e-9));

    HaltonSampler sampler(SampleBox::cube(2, -1.0, 1.0, 15));
    for (int i = 0; i < 15; ++i) {
        const VectorXd a = sampler.point(i);
        // radial path
        const double radial = integrate(
            [&](double t) { return symmetric_j(p, (t * a).eval()).dot(a); }, 0.0, 1.0);
        CHECK(J(a) == doctest::Approx(radial).epsilon(1e-9));
        // axis-parallel path
        VectorXd a1(2);
        a1 << a[0], 0.0;
        const double staircase =
            integrate([&](double s) {
                VectorXd x(2);
                x << s, 0.0;
                return symmetric_j(p, x)[0];
            }, 0.0, a[0]) +
            integrate([&](double s) {
                VectorXd x(2);
                x << a[0], s;
                return symmetric_j(p, x)[1];
            }, 0.0, a[1]);
        CHECK(J(a) == doctest::Approx(staircase).epsilon(1e-9));
    }
}

TEST_CASE("symmetric hessian bounds and inverse-map conditioning") {
    const auto p = SymmetricParams::defaults();
    const ModelDescriptor m = build_symmetric(p);
    check_hessian_bounds(m, 3000);
    check_derivative_consistency(m);

    // D^2J = (D^2 Sigma)^{-1} has eigenvalues in (1/(E+delta-gamma), 1/(E-Gamma))
    SampleBox box = m.default_U_box;
    box.count = 500;
    HaltonSampler sampler(box);
    for (int i = 0; i < 500; ++i) {
        const MatrixXd H = m.hessian(sampler.point(i));
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(H.bottomRightCorner(2, 2),
                                                   Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= 1.0 / (p.E + p.delta - p.gamma) - 1e-9);
        CHECK(es.eigenvalues().maxCoeff() <= 1.0 / (p.E - p.Gamma) + 1e-9);
    }
}

TEST_CASE("symmetric reduced pair: eta = Phi + const, q = |DPhi|^2 / 2") {
    const auto p = SymmetricParams::defaults();
    const ModelDescriptor m = build_symmetric(p);
    HaltonSampler sampler(SampleBox::cube(2, -1.0, 1.0, 30));
    VectorXd z2 = VectorXd::Zero(2);
    const double offset = equilibrium_entropy(m, z2) - p.Phi(z2);
    for (int i = 0; i < 30; ++i) {
        const VectorXd u = sampler.point(i);
        CHECK(equilibrium_entropy(m, u) ==
              doctest::Approx(p.Phi(u) + offset).epsilon(1e-9));
        CHECK(equilibrium_entropy_flux(m, u) ==
              doctest::Approx(0.5 * p.Phi_grad(u).squaredNorm()).epsilon(1e-9));
        const VectorXd f = equilibrium_flux(m, u);
        CHECK((f - p.Phi_grad(u)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("symmetric parameter validation rejects bad inputs") {
    auto p = SymmetricParams::defaults();
    p.delta = 1.0; // violates delta < gamma
    CHECK_THROWS_WITH_AS(build_symmetric(p),
                         doctest::Contains("E > Gamma > gamma > delta > 0"),
                         ConstructionError);

    p = SymmetricParams::defaults();
    p.Phi = [](const VectorXd& u) { return u.squaredNorm(); };
    p.Phi_grad = [](const VectorXd& u) { return (2.0 * u).eval(); };
    p.Phi_hess = [](const VectorXd& u) {
        return (2.0 * MatrixXd::Identity(u.size(), u.size())).eval();
    }; // above Gamma = 1.5
    CHECK_THROWS_WITH_AS(build_symmetric(p), doctest::Contains("D2Phi < Gamma"),
                         ConstructionError);
}

// ---------------------------------------------------------------------------
// cross-model structural checks
// ---------------------------------------------------------------------------

TEST_CASE("every built-in model passes its claimed hypotheses at modest sampling") {
    const std::vector<ModelDescriptor> models = {
        build_elasticity(ElasticityParams::defaults()),
        build_combustion(CombustionParams::defaults()),
        build_symmetric(SymmetricParams::defaults()),
    };
    for (const auto& m : models) {
        for (const auto& r : validate_all(m, 1500, 0)) {
            if (!m.claims.count(r.hypothesis_id)) continue;
            CAPTURE(m.name);
            CAPTURE(to_string(r.hypothesis_id));
            CHECK(r.passed);
        }
        // relative entropy vanishes exactly on the equilibrium manifold and
        // is strictly positive off it
        SampleBox box = m.default_u_box;
        box.count = 50;
        HaltonSampler sampler(box);
        for (int i = 0; i < 50; ++i) {
            const VectorXd u = sampler.point(i);
            CHECK(std::abs(relative_entropy(m, m.maxwellian(u), u)) <= 1e-12);
            VectorXd U = m.maxwellian(u);
            U[m.N - 1] += 0.1;
            CHECK(relative_entropy(m, U, u) > 0.0);
            CHECK(dissipation(m, U) ==
                  doctest::Approx(dissipation_alt(m, U)).epsilon(1e-9));
        }
    }
}
