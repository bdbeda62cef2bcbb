#pragma once

#include "relax/model.hpp"

namespace relax {

/// Result of sampling one structural hypothesis over a box.
/// worst_violation is the maximum residual of the defining (in)equality over
/// the samples; the sign convention is "<= tolerance means pass". For H9 the
/// value reported is the estimated Lipschitz constant and the pass condition
/// is finiteness.
struct HypothesisReport {
    HypothesisId hypothesis_id;
    bool passed = false;
    double worst_violation = 0.0;
    VectorXd witness;
    int samples_used = 0;
};

/// Numerically validates one of (H1)-(H9) or (H7*) by low-discrepancy
/// sampling of the box. H1/H2/H6 expect a u-space box; the rest a U-space
/// box. Deterministic given (box.seed, tol).
HypothesisReport validate_hypothesis(const ModelDescriptor& model, HypothesisId id,
                                     const SampleBox& box, double tol);

/// Runs H1..H9 with per-kind default tolerances on the model's default boxes.
std::vector<HypothesisReport> validate_all(const ModelDescriptor& model,
                                           int samples, std::uint64_t seed);

/// Tolerance convention used by validate_all and the CLI: identity-type
/// hypotheses accept residual 1e-6 (finite-difference limited); inequality
/// hypotheses accept slack 1e-10; H2 uses relative singular-value threshold 1e-7.
double default_tolerance(HypothesisId id);

} // namespace relax
