#include "relax/models/symmetric.hpp"

#include <cmath>
#include <sstream>

#include "relax/rootfind.hpp"

namespace relax {

namespace {

std::string witness_u(const char* inequality, const VectorXd& u, double value) {
    std::ostringstream os;
    os << "symmetric: " << inequality << " violated at u=(";
    for (int i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
    os << ") (value " << value << ")";
    return os.str();
}

void validate(const SymmetricParams& p) {
    if (p.n < 1)
        throw ConstructionError("symmetric: n >= 1 required");
    if (!p.Phi || !p.Phi_grad || !p.Phi_hess || !p.Efun || !p.Efun_grad ||
        !p.Efun_hess || !p.g)
        throw ConstructionError("symmetric: all potential callables and g are required");
    if (!(p.delta > 0.0) || !(p.gamma > p.delta) || !(p.Gamma > p.gamma) ||
        !(p.E > p.Gamma))
        throw ConstructionError("symmetric: E > Gamma > gamma > delta > 0 required");

    HaltonSampler sampler(SampleBox::cube(p.n, -2.0, 2.0, 2000));
    for (int i = 0; i < 2000; ++i) {
        const VectorXd u = sampler.point(i);
        Eigen::SelfAdjointEigenSolver<MatrixXd> ph(p.Phi_hess(u), Eigen::EigenvaluesOnly);
        const double plo = ph.eigenvalues().minCoeff();
        const double phi_hi = ph.eigenvalues().maxCoeff();
        if (!(plo > p.gamma))
            throw ConstructionError(witness_u("gamma I < D2Phi", u, plo));
        if (!(phi_hi < p.Gamma))
            throw ConstructionError(witness_u("D2Phi < Gamma I", u, phi_hi));
        Eigen::SelfAdjointEigenSolver<MatrixXd> eh(p.Efun_hess(u), Eigen::EigenvaluesOnly);
        const double elo = eh.eigenvalues().minCoeff();
        const double ehi = eh.eigenvalues().maxCoeff();
        if (!(elo >= p.E - 1e-12))
            throw ConstructionError(witness_u("E I <= D2E", u, elo));
        if (!(ehi <= p.E + p.delta + 1e-12))
            throw ConstructionError(witness_u("D2E <= (E+delta) I", u, ehi));
    }
}

} // namespace

SymmetricParams SymmetricParams::defaults() {
    SymmetricParams p;
    p.n = 2;
    p.Phi = [](const VectorXd& u) {
        double s = 0.5 * u.squaredNorm();
        for (int i = 0; i < u.size(); ++i) s += 0.1 * std::log(std::cosh(2.0 * u[i]));
        return s;
    };
    p.Phi_grad = [](const VectorXd& u) {
        VectorXd g = u;
        for (int i = 0; i < u.size(); ++i) g[i] += 0.2 * std::tanh(2.0 * u[i]);
        return g;
    };
    p.Phi_hess = [](const VectorXd& u) {
        MatrixXd H = MatrixXd::Zero(u.size(), u.size());
        for (int i = 0; i < u.size(); ++i) {
            const double c = std::cosh(2.0 * u[i]);
            H(i, i) = 1.0 + 0.4 / (c * c);
        }
        return H;
    };
    p.Efun = [](const VectorXd& u) {
        double s = u.squaredNorm();
        for (int i = 0; i < u.size(); ++i) s += 0.05 * std::log(std::cosh(u[i]));
        return s;
    };
    p.Efun_grad = [](const VectorXd& u) {
        VectorXd g = 2.0 * u;
        for (int i = 0; i < u.size(); ++i) g[i] += 0.05 * std::tanh(u[i]);
        return g;
    };
    p.Efun_hess = [](const VectorXd& u) {
        MatrixXd H = MatrixXd::Zero(u.size(), u.size());
        for (int i = 0; i < u.size(); ++i) {
            const double c = std::cosh(u[i]);
            H(i, i) = 2.0 + 0.05 / (c * c);
        }
        return H;
    };
    p.gamma = 0.9;
    p.Gamma = 1.5;
    p.E = 2.0;
    p.delta = 0.05;
    p.g = [](const VectorXd& u) { return (-0.25 * u).eval(); };
    return p;
}

VectorXd symmetric_j(const SymmetricParams& params, const VectorXd& alpha) {
    if (alpha.size() != params.n)
        throw ContractViolation("symmetric_j: alpha dimension mismatch");
    auto F = [&](const VectorXd& v) {
        return (params.Efun_grad(v) - params.Phi_grad(v) + alpha).eval();
    };
    auto J = [&](const VectorXd& v) {
        return (params.Efun_hess(v) - params.Phi_hess(v)).eval();
    };
    const VectorXd v = newton_system(F, J, VectorXd::Zero(params.n), alpha.norm());
    return -v;
}

ModelDescriptor build_symmetric(const SymmetricParams& params) {
    validate(params);
    const SymmetricParams p = params;
    const int n = p.n, N = 2 * n;

    auto sigma = [p](const VectorXd& u) { return p.Efun(u) - p.Phi(u); };
    auto sigma_grad = [p](const VectorXd& u) {
        return (p.Efun_grad(u) - p.Phi_grad(u)).eval();
    };
    auto sigma_hess = [p](const VectorXd& u) {
        return (p.Efun_hess(u) - p.Phi_hess(u)).eval();
    };
    auto j = [p](const VectorXd& alpha) { return symmetric_j(p, alpha); };

    // Additive normalization of the alpha-potential so that J(0) = 0: v0 is
    // the critical point of Sigma.
    const VectorXd v0 = newton_system(
        [&](const VectorXd& v) { return sigma_grad(v); },
        [&](const VectorXd& v) { return sigma_hess(v); }, VectorXd::Zero(n));
    const double sigma0 = sigma(v0);

    // J(alpha) as the Legendre-type closed form -alpha.v* - Sigma(v*) + Sigma(v0)
    // with DSigma(v*) = -alpha; then DJ = j(alpha) and D2J = D2Sigma(v*)^{-1}.
    auto Jpot = [sigma, j, sigma0](const VectorXd& alpha) {
        const VectorXd vs = -j(alpha);
        return -alpha.dot(vs) - sigma(vs) + sigma0;
    };

    ModelDescriptor m;
    m.name = "symmetric";
    m.n = n;
    m.N = N;
    for (int i = 0; i < n; ++i) {
        m.conserved_names.push_back("u" + std::to_string(i + 1));
        m.component_names.push_back("u" + std::to_string(i + 1));
    }
    for (int i = 0; i < n; ++i)
        m.component_names.push_back("alpha" + std::to_string(i + 1));

    m.flux = [p, n, N](const VectorXd& U) {
        VectorXd F = VectorXd::Zero(N);
        F.head(n) = U.tail(n) + p.Efun_grad(U.head(n));
        return F;
    };
    m.relaxation = [sigma_grad, n, N](const VectorXd& U) {
        VectorXd R = VectorXd::Zero(N);
        R.tail(n) = -sigma_grad(U.head(n)) - U.tail(n);
        return R;
    };
    m.source = [p, n, N](const VectorXd& U) {
        VectorXd G = VectorXd::Zero(N);
        G.head(n) = p.g(U.head(n));
        return G;
    };
    m.maxwellian = [sigma_grad, n, N](const VectorXd& u) {
        VectorXd M(N);
        M.head(n) = u;
        M.tail(n) = -sigma_grad(u);
        return M;
    };
    m.projection = MatrixXd::Zero(n, N);
    m.projection.leftCols(n) = MatrixXd::Identity(n, n);

    m.entropy = [p, Jpot, n](const VectorXd& U) {
        return p.Efun(U.head(n)) + U.tail(n).dot(U.head(n)) + Jpot(U.tail(n));
    };
    m.entropy_flux = [p, n](const VectorXd& U) {
        return 0.5 * (U.tail(n) + p.Efun_grad(U.head(n))).squaredNorm();
    };
    m.entropy_grad = [p, j, n, N](const VectorXd& U) {
        RowVectorXd g(N);
        g.head(n) = (p.Efun_grad(U.head(n)) + U.tail(n)).transpose();
        g.tail(n) = (U.head(n) + j(U.tail(n))).transpose();
        return g;
    };
    m.entropy_hess = [p, j, sigma_hess, n, N](const VectorXd& U) {
        MatrixXd H = MatrixXd::Zero(N, N);
        H.topLeftCorner(n, n) = p.Efun_hess(U.head(n));
        H.topRightCorner(n, n) = MatrixXd::Identity(n, n);
        H.bottomLeftCorner(n, n) = MatrixXd::Identity(n, n);
        const VectorXd vs = -j(U.tail(n));
        H.bottomRightCorner(n, n) = sigma_hess(vs).inverse();
        return H;
    };

    m.constants.gamma = p.gamma;
    m.constants.Gamma = p.Gamma;
    m.constants.E = p.E;
    // Lower bound from E|x|^2 - 2|x||y| + |y|^2/(E+delta-gamma) with exact
    // square completion; upper bound from the coarse row estimates.
    const double denom = (p.E + 0.5 * (p.delta - p.gamma)) * (p.E + p.delta - p.gamma);
    m.constants.mu = 0.5 * (p.gamma - p.delta) * std::min(1.0, 1.0 / denom);
    m.constants.mu_prime = std::max(p.E + p.delta + 1.0, 1.0 / (p.E - p.Gamma) + 1.0);
    m.constants.nu = 1.0 / (p.E + p.delta - p.gamma);
    m.constants.flux_bound = std::sqrt((p.E + p.delta) * (p.E + p.delta) + 1.0);

    m.affine_relaxation = true;
    const double speed = p.E + p.delta; // spectral radius of DF is lmax(D2E)
    m.wave_speed = [speed](const VectorXd&) { return speed; };

    m.claims = {HypothesisId::H1, HypothesisId::H2, HypothesisId::H3,
                HypothesisId::H4, HypothesisId::H5, HypothesisId::H6,
                HypothesisId::H7, HypothesisId::H7star, HypothesisId::H9};

    m.default_u_box = SampleBox::cube(n, -1.0, 1.0);
    m.default_U_box.lo.resize(N);
    m.default_U_box.hi.resize(N);
    m.default_U_box.lo << VectorXd::Constant(n, -1.0), VectorXd::Constant(n, -1.5);
    m.default_U_box.hi << VectorXd::Constant(n, 1.0), VectorXd::Constant(n, 1.5);
    return m;
}

} // namespace relax
