#include "relax/hypotheses.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace relax {

namespace {

struct Worst {
    double value = -std::numeric_limits<double>::infinity();
    VectorXd witness;

    // Strict comparison: ties keep the earlier sample, so the reduction is
    // deterministic for any evaluation order.
    void update(double v, const VectorXd& x) {
        if (v > value) {
            value = v;
            witness = x;
        }
    }
};

void require_dim(const SampleBox& box, int dim, HypothesisId id) {
    if (box.dim() != dim)
        throw ContractViolation(std::string("validate_hypothesis(") + to_string(id) +
                                "): box dimension " + std::to_string(box.dim()) +
                                ", expected " + std::to_string(dim));
}

bool u_space(HypothesisId id) {
    return id == HypothesisId::H1 || id == HypothesisId::H2 || id == HypothesisId::H6;
}

bool pair_space(HypothesisId id) {
    return id == HypothesisId::H8 || id == HypothesisId::H9;
}

} // namespace

HypothesisReport validate_hypothesis(const ModelDescriptor& model, HypothesisId id,
                                     const SampleBox& box, double tol) {
    const int n = model.n, N = model.N;
    require_dim(box, u_space(id) ? n : N, id);
    SampleBox sample_box = pair_space(id) ? SampleBox::pair(box) : box;
    HaltonSampler sampler(sample_box);

    HypothesisReport report;
    report.hypothesis_id = id;
    report.samples_used = box.count;
    Worst worst;

    switch (id) {
    case HypothesisId::H1: {
        // Maxwellians are equilibria: R(M(u)) = 0.
        for (int i = 0; i < box.count; ++i) {
            const VectorXd u = sampler.point(i);
            worst.update(model.relaxation(model.maxwellian(u)).lpNorm<Eigen::Infinity>(), u);
        }
        report.passed = worst.value <= tol;
        break;
    }
    case HypothesisId::H2: {
        // Nondegeneracy of DR at Maxwellian points: nullity n, rank N - n,
        // decided by singular values relative to tol * sigma_max.
        double worst_rank_margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < box.count; ++i) {
            const VectorXd u = sampler.point(i);
            const MatrixXd DR = fd::jacobian(model.relaxation, model.maxwellian(u));
            Eigen::JacobiSVD<MatrixXd> svd(DR);
            const VectorXd sv = svd.singularValues();
            const double smax = sv[0];
            if (!(smax > 0.0)) {
                worst.update(std::numeric_limits<double>::infinity(), u);
                continue;
            }
            // sv is sorted descending; entries [N-n, N) should vanish and
            // entry N-n-1 should stay above the threshold.
            worst.update(sv[N - n] / smax, u);
            worst_rank_margin = std::min(worst_rank_margin, sv[N - n - 1] / smax);
        }
        report.passed = worst.value <= tol && worst_rank_margin > tol;
        break;
    }
    case HypothesisId::H3: {
        // P M(u) = u and P R(U) = 0.
        for (int i = 0; i < box.count; ++i) {
            const VectorXd U = sampler.point(i);
            const VectorXd u = model.projection * U;
            const double r1 = (model.projection * model.relaxation(U)).lpNorm<Eigen::Infinity>();
            const double r2 = (model.projection * model.maxwellian(u) - u).lpNorm<Eigen::Infinity>();
            worst.update(std::max(r1, r2), U);
        }
        report.passed = worst.value <= tol;
        break;
    }
    case HypothesisId::H4: {
        // Compatibility DH DF = DQ and eigenvalue bounds mu I <= D2H <= mu' I.
        for (int i = 0; i < box.count; ++i) {
            const VectorXd U = sampler.point(i);
            const MatrixXd DF = fd::jacobian(model.flux, U);
            const RowVectorXd DQ = fd::gradient(model.entropy_flux, U);
            const double res = (model.entropy_grad(U) * DF - DQ).lpNorm<Eigen::Infinity>();
            double viol = res;
            if (model.constants.mu && model.constants.mu_prime) {
                Eigen::SelfAdjointEigenSolver<MatrixXd> es(model.hessian(U),
                                                           Eigen::EigenvaluesOnly);
                const double lmin = es.eigenvalues().minCoeff();
                const double lmax = es.eigenvalues().maxCoeff();
                viol = std::max({viol, *model.constants.mu - lmin,
                                 lmax - *model.constants.mu_prime});
            }
            worst.update(viol, U);
        }
        report.passed = worst.value <= tol;
        break;
    }
    case HypothesisId::H5: {
        // D(U) = -DH(U) R(U) >= 0.
        for (int i = 0; i < box.count; ++i) {
            const VectorXd U = sampler.point(i);
            worst.update(-dissipation(model, U), U);
        }
        report.passed = worst.value <= tol;
        break;
    }
    case HypothesisId::H6: {
        // Entropy consistency: D_u eta D_u f = D_u q on the manifold.
        auto eta = [&](const VectorXd& u) { return equilibrium_entropy(model, u); };
        auto f = [&](const VectorXd& u) { return equilibrium_flux(model, u); };
        auto q = [&](const VectorXd& u) { return equilibrium_entropy_flux(model, u); };
        for (int i = 0; i < box.count; ++i) {
            const VectorXd u = sampler.point(i);
            const RowVectorXd lhs = fd::gradient(eta, u) * fd::jacobian(f, u);
            worst.update((lhs - fd::gradient(q, u)).lpNorm<Eigen::Infinity>(), u);
        }
        report.passed = worst.value <= tol;
        break;
    }
    case HypothesisId::H7: {
        if (!model.constants.nu)
            throw ContractViolation("H7 validation requires constants.nu");
        const double nu = *model.constants.nu;
        for (int i = 0; i < box.count; ++i) {
            const VectorXd U = sampler.point(i);
            const VectorXd d = U - model.maxwellian(model.projection * U);
            worst.update(nu * d.squaredNorm() - dissipation_alt(model, U), U);
        }
        report.passed = worst.value <= tol;
        break;
    }
    case HypothesisId::H7star: {
        // Local variant: report -inf{ bracket / |U - M(PU)|^2 } over the box,
        // skipping near-manifold states where the ratio is 0/0.
        double nu_r = std::numeric_limits<double>::infinity();
        VectorXd witness;
        for (int i = 0; i < box.count; ++i) {
            const VectorXd U = sampler.point(i);
            const double d2 = (U - model.maxwellian(model.projection * U)).squaredNorm();
            if (d2 < 1e-16) continue;
            const double ratio = dissipation_alt(model, U) / d2;
            if (ratio < nu_r) {
                nu_r = ratio;
                witness = U;
            }
        }
        worst.value = -nu_r;
        worst.witness = witness;
        report.passed = nu_r > 0.0;
        break;
    }
    case HypothesisId::H8: {
        // Weak dissipativity of G with respect to the manifold, sampled over
        // state pairs (U, M(u_bar)).
        for (int i = 0; i < box.count; ++i) {
            const VectorXd pair = sampler.point(i);
            const VectorXd U = pair.head(N);
            const VectorXd u_bar = model.projection * pair.tail(N);
            worst.update(-source_bracket(model, U, u_bar), pair);
        }
        report.passed = worst.value <= tol;
        break;
    }
    case HypothesisId::H9: {
        // Lipschitz estimate for G over sampled pairs; the value itself is
        // the artifact, pass means finite.
        for (int i = 0; i < box.count; ++i) {
            const VectorXd pair = sampler.point(i);
            const VectorXd U = pair.head(N);
            const VectorXd V = pair.tail(N);
            const double dist = (U - V).norm();
            if (dist < 1e-12) continue;
            worst.update((model.source(U) - model.source(V)).norm() / dist, pair);
        }
        report.passed = std::isfinite(worst.value);
        break;
    }
    }

    report.worst_violation = worst.value;
    report.witness = worst.witness;
    return report;
}

double default_tolerance(HypothesisId id) {
    switch (id) {
    case HypothesisId::H2:
        return 1e-7;
    case HypothesisId::H4:
    case HypothesisId::H6:
        return 1e-6;
    case HypothesisId::H9:
        return std::numeric_limits<double>::infinity();
    default:
        return 1e-10;
    }
}

std::vector<HypothesisReport> validate_all(const ModelDescriptor& model,
                                           int samples, std::uint64_t seed) {
    std::vector<HypothesisReport> reports;
    for (auto id : {HypothesisId::H1, HypothesisId::H2, HypothesisId::H3,
                    HypothesisId::H4, HypothesisId::H5, HypothesisId::H6,
                    HypothesisId::H7, HypothesisId::H8, HypothesisId::H9}) {
        SampleBox box = (id == HypothesisId::H1 || id == HypothesisId::H2 ||
                         id == HypothesisId::H6)
                            ? model.default_u_box
                            : model.default_U_box;
        box.count = samples;
        box.seed = seed;
        reports.push_back(validate_hypothesis(model, id, box, default_tolerance(id)));
    }
    return reports;
}

} // namespace relax
