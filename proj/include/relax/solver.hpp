#pragma once

#include <functional>
#include <string>

#include "relax/grid.hpp"
#include "relax/model.hpp"

namespace relax {

/// Rusanov (local Lax-Friedrichs) interface flux for the relaxation system:
/// (F(U_L) + F(U_R))/2 - (speed/2)(U_R - U_L). `speed` must dominate the
/// local spectral radius of DF.
VectorXd numerical_flux(const ModelDescriptor& model, const VectorXd& U_L,
                        const VectorXd& U_R, double speed);

/// Largest wave-speed bound over the field. Accepts both relaxation-width
/// (N) and equilibrium-width (n) fields; equilibrium cells are bounded via
/// their Maxwellian lift (valid by the subcharacteristic ordering).
double max_wave_speed(const ModelDescriptor& model, const StateField& field);

/// Exact stiff update over dt: relaxed components decay toward h(u) as
/// alpha <- h + (alpha - h) exp(-dt/eps), conserved components frozen.
/// Requires the descriptor's affine_relaxation flag.
StateField relaxation_substep(const ModelDescriptor& model, const StateField& field,
                              double dt, double eps);

/// One SSP two-stage explicit transport + non-stiff source step with periodic
/// closure; throws StepSizeError when dt exceeds dx / max_wave_speed.
StateField hyperbolic_step(const ModelDescriptor& model, const StateField& field,
                           double dt);

/// Integrates the relaxation system from cell-center samples of `ic` by
/// Strang composition (half stiff, full transport, half stiff). Snapshots are
/// taken at exactly the requested output times; the step size comes from the
/// CFL condition alone.
SimulationRun run_relaxation(const ModelDescriptor& model, const GridSpec& grid,
                             const std::function<VectorXd(double)>& ic,
                             const TimeControl& tc, double eps,
                             const std::vector<double>& output_times);

/// Same scheme applied to the n-component equilibrium reduction with fluxes
/// f(u) = P F(M(u)) and source g(u) = P G(M(u)). Raises SmoothnessLostError
/// once the max cell-difference gradient grows by 1e3 over its initial value.
SimulationRun run_equilibrium(const ModelDescriptor& model, const GridSpec& grid,
                              const std::function<VectorXd(double)>& ic_u,
                              const TimeControl& tc,
                              const std::vector<double>& output_times);

/// Block-averages a field computed on a grid refined by `factor` down to the
/// coarse grid (factor must divide field.grid.cells).
StateField restrict_field(const StateField& fine, int factor);

/// Writes one row per cell: x, then components in declared order, with a
/// header row; floats at 17 significant digits.
void export_snapshot_csv(const StateField& field,
                         const std::vector<std::string>& component_names,
                         const std::string& path);

/// "<prefix>_t<time>.csv" with the time at 6 significant digits.
std::string snapshot_filename(const std::string& prefix, double time);

} // namespace relax
