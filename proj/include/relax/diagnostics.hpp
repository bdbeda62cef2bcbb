#pragma once

#include <string>
#include <vector>

#include "relax/model.hpp"
#include "relax/solver.hpp"

namespace relax {

/// Outcome of an eps-sweep against a refined equilibrium reference.
struct ConvergenceReport {
    std::vector<double> eps_values;
    std::vector<double> errors;    // sup over snapshots of the total relative entropy
    std::vector<double> l2_errors; // sup over snapshots of ||U - M(u_ref)||_L2
    std::vector<bool> used;        // errors[i] > 3 * floor_estimate
    double fitted_slope = 0.0;     // log-log OLS over used points
    double floor_estimate = 0.0;   // discretization contribution
    int points_used = 0;
};

/// Per-slice terms of the discrete relative-entropy balance
///   dt Hr + dx Qr + D/eps + S - (J1 + J2 + J3 + J4) = residual,
/// with forward time differences and central space differences.
struct IdentityResidualReport {
    std::vector<double> times; // left endpoints of the snapshot pairs
    std::vector<VectorXd> Hr, Qr, D_over_eps, S, J1, J2, J3, J4, residual;
    std::vector<double> residual_l1; // dx-weighted per slice
};

/// dx * sum_i Hr(U_i, u_i); both fields must share the grid and time.
double total_relative_entropy(const ModelDescriptor& model,
                              const StateField& relax_field,
                              const StateField& eq_field);

/// Lifts equilibrium initial data onto the Maxwellian manifold, so the
/// initial relative entropy vanishes identically.
std::function<VectorXd(double)>
well_prepared_ic(const ModelDescriptor& model,
                 const std::function<VectorXd(double)>& ic_u);

/// Numeric finite-propagation bound sup ||D2H(U) DF(V)|| / min_eig(D2H) over
/// sampled state pairs in the box. Documentation value; periodic runs do not
/// clip to cones.
double cone_speed(const ModelDescriptor& model, const SampleBox& box);

/// Evaluates the relative-entropy balance on matching snapshot pairs of a
/// relaxation run and an equilibrium reference run on the same grid.
IdentityResidualReport identity_residual(const ModelDescriptor& model,
                                         const SimulationRun& run_relax,
                                         const SimulationRun& run_eq, double eps);

/// For each eps: relaxation run from well-prepared data vs an equilibrium
/// reference computed on a grid refined by floor_grid_factor and restricted
/// back. The floor is the same comparison applied to the unrefined
/// equilibrium run; the slope fit uses only points above 3x floor.
/// eps cases run in parallel (capped by RELAX_THREADS); assembly order is the
/// input order.
ConvergenceReport convergence_study(const ModelDescriptor& model,
                                    const GridSpec& grid,
                                    const std::function<VectorXd(double)>& ic_u,
                                    const TimeControl& tc,
                                    const std::vector<double>& eps_list,
                                    int floor_grid_factor);

/// Columns: eps, sup_Hr, sup_L2, floor, used.
void export_convergence_csv(const ConvergenceReport& report, const std::string& path);

/// Columns: t, residual_l1.
void export_identity_csv(const IdentityResidualReport& report, const std::string& path);

std::string summary_text(const ConvergenceReport& report);

/// Uniform snapshot schedule k * t_end / count, k = 1..count.
std::vector<double> uniform_output_times(double t_end, int count = 20);

} // namespace relax
