#include "relax/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "relax/csv.hpp"

namespace relax {

namespace {

/// Common shape of both the relaxation system (width N) and its equilibrium
/// reduction (width n): explicit flux, non-stiff source, wave-speed bound.
struct System {
    int width = 0;
    std::function<VectorXd(const VectorXd&)> flux;
    std::function<VectorXd(const VectorXd&)> source;
    std::function<double(const VectorXd&)> speed;
    std::function<double(const VectorXd&)> entropy;
};

System relaxation_system(const ModelDescriptor& m) {
    System s;
    s.width = m.N;
    s.flux = m.flux;
    s.source = m.source;
    s.speed = m.wave_speed;
    s.entropy = m.entropy;
    return s;
}

System equilibrium_system(const ModelDescriptor& m) {
    System s;
    s.width = m.n;
    s.flux = [&m](const VectorXd& u) { return equilibrium_flux(m, u); };
    s.source = [&m](const VectorXd& u) { return equilibrium_source(m, u); };
    // Subcharacteristic ordering: the relaxation bound dominates the
    // equilibrium characteristic speeds.
    s.speed = [&m](const VectorXd& u) { return m.wave_speed(m.maxwellian(u)); };
    s.entropy = [&m](const VectorXd& u) { return equilibrium_entropy(m, u); };
    return s;
}

double field_speed(const System& sys, const Eigen::MatrixXd& data) {
    double s = 0.0;
    for (int i = 0; i < data.rows(); ++i)
        s = std::max(s, sys.speed(data.row(i).transpose()));
    return s;
}

/// Forward-Euler stage: data + dt * (flux divergence + source), periodic.
Eigen::MatrixXd euler_stage(const System& sys, const GridSpec& grid,
                            const Eigen::MatrixXd& data, double dt) {
    const int cells = static_cast<int>(data.rows());
    const double dx = grid.dx();
    Eigen::MatrixXd F(cells, sys.width);   // cell fluxes
    Eigen::VectorXd a(cells);              // cell speed bounds
    for (int i = 0; i < cells; ++i) {
        const VectorXd Ui = data.row(i).transpose();
        F.row(i) = sys.flux(Ui).transpose();
        a[i] = sys.speed(Ui);
    }
    Eigen::MatrixXd out(cells, sys.width);
    for (int i = 0; i < cells; ++i) {
        const int il = (i + cells - 1) % cells, ir = (i + 1) % cells;
        const double sl = std::max(a[il], a[i]), sr = std::max(a[i], a[ir]);
        // Rusanov interface fluxes at i-1/2 and i+1/2.
        const Eigen::RowVectorXd flux_l =
            0.5 * (F.row(il) + F.row(i)) - 0.5 * sl * (data.row(i) - data.row(il));
        const Eigen::RowVectorXd flux_r =
            0.5 * (F.row(i) + F.row(ir)) - 0.5 * sr * (data.row(ir) - data.row(i));
        out.row(i) = data.row(i) - (dt / dx) * (flux_r - flux_l) +
                     dt * sys.source(data.row(i).transpose()).transpose();
    }
    return out;
}

Eigen::MatrixXd ssp2_step(const System& sys, const GridSpec& grid,
                          const Eigen::MatrixXd& data, double dt) {
    const double s = field_speed(sys, data);
    if (s > 0.0 && dt > grid.dx() / s * (1.0 + 1e-9))
        throw StepSizeError("hyperbolic step: dt exceeds dx / max wave speed");
    const Eigen::MatrixXd u1 = euler_stage(sys, grid, data, dt);
    return 0.5 * (data + euler_stage(sys, grid, u1, dt));
}

void check_finite(const Eigen::MatrixXd& data, double time) {
    if (data.allFinite()) return;
    for (int i = 0; i < data.rows(); ++i)
        if (!data.row(i).allFinite()) {
            std::ostringstream os;
            os << "state blow-up at t=" << time << ", cell " << i;
            throw BlowUpError(time, i, os.str());
        }
}

void stiff_update(const ModelDescriptor& model, Eigen::MatrixXd& data, double dt,
                  double eps) {
    if (!model.affine_relaxation)
        throw ContractViolation(
            "relaxation_substep: model lacks the affine relaxation structure");
    const int n = model.n, k = model.N - n;
    const double decay = std::exp(-dt / eps);
    for (int i = 0; i < data.rows(); ++i) {
        const VectorXd h =
            model.maxwellian(data.row(i).head(n).transpose()).tail(k);
        data.row(i).tail(k) =
            h.transpose() + (data.row(i).tail(k) - h.transpose()) * decay;
    }
}

int z_column(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == "Z") return static_cast<int>(i);
    return -1;
}

double max_gradient(const Eigen::MatrixXd& data, double dx) {
    const int cells = static_cast<int>(data.rows());
    double g = 0.0;
    for (int i = 0; i < cells; ++i)
        g = std::max(
            g, (data.row((i + 1) % cells) - data.row(i)).lpNorm<Eigen::Infinity>());
    return g / dx;
}

std::vector<double> checked_output_times(const std::vector<double>& times,
                                         double t_end) {
    std::vector<double> out = times;
    std::sort(out.begin(), out.end());
    for (double t : out)
        if (t < 0.0 || t > t_end * (1.0 + 1e-12))
            throw ContractViolation("output times must lie in [0, t_end]");
    return out;
}

SimulationRun advance(const ModelDescriptor& model, const System& sys,
                      const GridSpec& grid,
                      const std::function<VectorXd(double)>& ic,
                      const TimeControl& tc, const std::vector<double>& output_times,
                      bool relax_mode, double eps, bool smoothness_guard,
                      const std::vector<std::string>& names) {
    grid.validate();
    if (!(tc.t_end > 0.0))
        throw ContractViolation("TimeControl: t_end > 0 required");
    if (!(tc.cfl > 0.0 && tc.cfl <= 1.0))
        throw ContractViolation("TimeControl: cfl in (0, 1] required");

    StateField field;
    field.grid = grid;
    field.width = sys.width;
    field.time = 0.0;
    field.data.resize(grid.cells, sys.width);
    for (int i = 0; i < grid.cells; ++i) {
        const VectorXd v = ic(grid.center(i));
        if (v.size() != sys.width)
            throw ContractViolation("initial condition width mismatch");
        field.data.row(i) = v.transpose();
    }
    check_finite(field.data, 0.0);

    const std::vector<double> times = checked_output_times(output_times, tc.t_end);
    const int zc = z_column(names);
    const double dx = grid.dx();
    const double grad0 = std::max(max_gradient(field.data, dx), 1e-8);

    SimulationRun run;
    std::size_t out_idx = 0;
    auto emit_due = [&](double t) {
        while (out_idx < times.size() && times[out_idx] <= t + 1e-12 * (1.0 + t)) {
            StateField snap = field;
            snap.time = times[out_idx];
            run.snapshots.push_back(std::move(snap));
            ++out_idx;
        }
    };
    emit_due(0.0);

    double t = 0.0;
    long steps = 0;
    const double t_tol = 1e-12 * (1.0 + tc.t_end);
    while (t < tc.t_end - t_tol) {
        if (++steps > tc.max_steps)
            throw NumericError("time loop exceeded max_steps");
        const double s = field_speed(sys, field.data);
        double dt = s > 0.0 ? tc.cfl * dx / s : tc.t_end - t;
        double stop = tc.t_end;
        if (out_idx < times.size()) stop = std::min(stop, times[out_idx]);
        dt = std::min(dt, stop - t);

        if (relax_mode) {
            stiff_update(model, field.data, 0.5 * dt, eps);
            field.data = ssp2_step(sys, grid, field.data, dt);
            stiff_update(model, field.data, 0.5 * dt, eps);
        } else {
            field.data = ssp2_step(sys, grid, field.data, dt);
        }
        t += dt;
        field.time = t;
        check_finite(field.data, t);

        if (smoothness_guard && max_gradient(field.data, dx) > 1e3 * grad0)
            throw SmoothnessLostError(
                t, "equilibrium reference left the smooth regime");

        if (tc.record_series) {
            SeriesRecord rec;
            rec.t = t;
            rec.dt = dt;
            double H = 0.0, D = 0.0;
            for (int i = 0; i < grid.cells; ++i) {
                const VectorXd Ui = field.data.row(i).transpose();
                H += sys.entropy(Ui);
                if (relax_mode) D += dissipation(model, Ui);
            }
            rec.total_entropy = dx * H;
            rec.total_dissipation = dx * D;
            if (zc >= 0) {
                rec.min_Z = field.data.col(zc).minCoeff();
                rec.max_Z = field.data.col(zc).maxCoeff();
            } else {
                rec.min_Z = rec.max_Z = std::numeric_limits<double>::quiet_NaN();
            }
            run.series.push_back(rec);
        }
        emit_due(t);
    }
    emit_due(tc.t_end);
    return run;
}

} // namespace

VectorXd numerical_flux(const ModelDescriptor& model, const VectorXd& U_L,
                        const VectorXd& U_R, double speed) {
    return 0.5 * (model.flux(U_L) + model.flux(U_R)) - 0.5 * speed * (U_R - U_L);
}

double max_wave_speed(const ModelDescriptor& model, const StateField& field) {
    const System sys = field.width == model.N ? relaxation_system(model)
                       : field.width == model.n
                           ? equilibrium_system(model)
                           : throw ContractViolation("max_wave_speed: field width "
                                                     "matches neither N nor n");
    return field_speed(sys, field.data);
}

StateField relaxation_substep(const ModelDescriptor& model, const StateField& field,
                              double dt, double eps) {
    if (field.width != model.N)
        throw ContractViolation("relaxation_substep: field width must be N");
    if (!(eps > 0.0) || !(dt >= 0.0))
        throw ContractViolation("relaxation_substep: eps > 0, dt >= 0 required");
    StateField out = field;
    stiff_update(model, out.data, dt, eps);
    return out;
}

StateField hyperbolic_step(const ModelDescriptor& model, const StateField& field,
                           double dt) {
    const System sys = field.width == model.N ? relaxation_system(model)
                       : field.width == model.n
                           ? equilibrium_system(model)
                           : throw ContractViolation("hyperbolic_step: field width "
                                                     "matches neither N nor n");
    StateField out = field;
    out.data = ssp2_step(sys, field.grid, field.data, dt);
    return out;
}

SimulationRun run_relaxation(const ModelDescriptor& model, const GridSpec& grid,
                             const std::function<VectorXd(double)>& ic,
                             const TimeControl& tc, double eps,
                             const std::vector<double>& output_times) {
    if (!(eps > 0.0))
        throw ContractViolation("run_relaxation: eps > 0 required");
    return advance(model, relaxation_system(model), grid, ic, tc, output_times,
                   /*relax_mode=*/true, eps, /*smoothness_guard=*/false,
                   model.component_names);
}

SimulationRun run_equilibrium(const ModelDescriptor& model, const GridSpec& grid,
                              const std::function<VectorXd(double)>& ic_u,
                              const TimeControl& tc,
                              const std::vector<double>& output_times) {
    return advance(model, equilibrium_system(model), grid, ic_u, tc, output_times,
                   /*relax_mode=*/false, 0.0, /*smoothness_guard=*/true,
                   model.conserved_names);
}

StateField restrict_field(const StateField& fine, int factor) {
    if (factor < 1 || fine.grid.cells % factor != 0)
        throw ContractViolation("restrict_field: factor must divide cell count");
    StateField out;
    out.grid = fine.grid;
    out.grid.cells = fine.grid.cells / factor;
    out.width = fine.width;
    out.time = fine.time;
    out.data.setZero(out.grid.cells, fine.width);
    for (int i = 0; i < out.grid.cells; ++i) {
        for (int k = 0; k < factor; ++k) out.data.row(i) += fine.data.row(i * factor + k);
        out.data.row(i) /= factor;
    }
    return out;
}

void export_snapshot_csv(const StateField& field,
                         const std::vector<std::string>& component_names,
                         const std::string& path) {
    if (static_cast<int>(component_names.size()) != field.width)
        throw ContractViolation("export_snapshot_csv: name count mismatch");
    std::ofstream os(path);
    if (!os) throw NumericError("cannot open " + path + " for writing");
    os << "x";
    for (const auto& name : component_names) os << "," << name;
    os << "\n";
    for (int i = 0; i < field.grid.cells; ++i) {
        os << csv::num(field.grid.center(i));
        for (int k = 0; k < field.width; ++k) os << "," << csv::num(field.data(i, k));
        os << "\n";
    }
}

std::string snapshot_filename(const std::string& prefix, double time) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", time);
    return prefix + "_t" + buf + ".csv";
}

} // namespace relax
