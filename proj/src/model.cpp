#include "relax/model.hpp"

#include <cmath>

namespace relax {

const char* to_string(HypothesisId id) {
    switch (id) {
    case HypothesisId::H1: return "H1";
    case HypothesisId::H2: return "H2";
    case HypothesisId::H3: return "H3";
    case HypothesisId::H4: return "H4";
    case HypothesisId::H5: return "H5";
    case HypothesisId::H6: return "H6";
    case HypothesisId::H7: return "H7";
    case HypothesisId::H7star: return "H7*";
    case HypothesisId::H8: return "H8";
    case HypothesisId::H9: return "H9";
    }
    return "?";
}

HypothesisId hypothesis_from_string(const std::string& s) {
    for (auto id : {HypothesisId::H1, HypothesisId::H2, HypothesisId::H3,
                    HypothesisId::H4, HypothesisId::H5, HypothesisId::H6,
                    HypothesisId::H7, HypothesisId::H7star, HypothesisId::H8,
                    HypothesisId::H9})
        if (s == to_string(id)) return id;
    throw ContractViolation("unknown hypothesis id: " + s);
}

static void check_state(const ModelDescriptor& model, const VectorXd& U) {
    if (U.size() != model.N)
        throw ContractViolation("state dimension mismatch: expected N=" +
                                std::to_string(model.N) + ", got " +
                                std::to_string(U.size()));
    if (!U.allFinite())
        throw ContractViolation("non-finite state");
}

static void check_conserved(const ModelDescriptor& model, const VectorXd& u) {
    if (u.size() != model.n)
        throw ContractViolation("conserved dimension mismatch: expected n=" +
                                std::to_string(model.n) + ", got " +
                                std::to_string(u.size()));
    if (!u.allFinite())
        throw ContractViolation("non-finite conserved state");
}

VectorXd project(const ModelDescriptor& model, const VectorXd& U) {
    check_state(model, U);
    return model.projection * U;
}

VectorXd equilibrium_flux(const ModelDescriptor& model, const VectorXd& u) {
    check_conserved(model, u);
    return model.projection * model.flux(model.maxwellian(u));
}

VectorXd equilibrium_source(const ModelDescriptor& model, const VectorXd& u) {
    check_conserved(model, u);
    return model.projection * model.source(model.maxwellian(u));
}

double equilibrium_entropy(const ModelDescriptor& model, const VectorXd& u) {
    check_conserved(model, u);
    return model.entropy(model.maxwellian(u));
}

double equilibrium_entropy_flux(const ModelDescriptor& model, const VectorXd& u) {
    check_conserved(model, u);
    return model.entropy_flux(model.maxwellian(u));
}

double relative_entropy(const ModelDescriptor& model, const VectorXd& U,
                        const VectorXd& u_bar) {
    check_state(model, U);
    check_conserved(model, u_bar);
    const VectorXd Mb = model.maxwellian(u_bar);
    return model.entropy(U) - model.entropy(Mb) -
           model.entropy_grad(Mb).dot(U - Mb);
}

double relative_entropy_flux(const ModelDescriptor& model, const VectorXd& U,
                             const VectorXd& u_bar) {
    check_state(model, U);
    check_conserved(model, u_bar);
    const VectorXd Mb = model.maxwellian(u_bar);
    return model.entropy_flux(U) - model.entropy_flux(Mb) -
           model.entropy_grad(Mb).dot(model.flux(U) - model.flux(Mb));
}

double dissipation(const ModelDescriptor& model, const VectorXd& U) {
    check_state(model, U);
    return -model.entropy_grad(U).dot(model.relaxation(U));
}

double dissipation_alt(const ModelDescriptor& model, const VectorXd& U) {
    check_state(model, U);
    const VectorXd Mu = model.maxwellian(model.projection * U);
    return -(model.entropy_grad(U) - model.entropy_grad(Mu))
                .dot(model.relaxation(U) - model.relaxation(Mu));
}

double source_bracket(const ModelDescriptor& model, const VectorXd& U,
                      const VectorXd& u_bar) {
    check_state(model, U);
    check_conserved(model, u_bar);
    const VectorXd Mb = model.maxwellian(u_bar);
    return -(model.entropy_grad(U) - model.entropy_grad(Mb))
                .dot(model.source(U) - model.source(Mb));
}

} // namespace relax
