#include "relax/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "relax/csv.hpp"

namespace relax {

namespace {

void require_matching(const StateField& a, const StateField& b) {
    if (!(a.grid == b.grid))
        throw ContractViolation("fields live on different grids");
    if (std::abs(a.time - b.time) > 1e-9 * (1.0 + std::abs(a.time)))
        throw ContractViolation("fields are at different times");
}

int thread_cap(int jobs) {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    if (const char* env = std::getenv("RELAX_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) cap = v;
    }
    return std::min(cap, jobs);
}

/// OLS slope of log10(y) against log10(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const int k = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < k; ++i) {
        const double lx = std::log10(x[i]), ly = std::log10(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

} // namespace

double total_relative_entropy(const ModelDescriptor& model,
                              const StateField& relax_field,
                              const StateField& eq_field) {
    require_matching(relax_field, eq_field);
    if (relax_field.width != model.N || eq_field.width != model.n)
        throw ContractViolation("total_relative_entropy: widths must be (N, n)");
    double total = 0.0;
    for (int i = 0; i < relax_field.grid.cells; ++i)
        total += relative_entropy(model, relax_field.cell(i), eq_field.cell(i));
    return relax_field.grid.dx() * total;
}

std::function<VectorXd(double)>
well_prepared_ic(const ModelDescriptor& model,
                 const std::function<VectorXd(double)>& ic_u) {
    return [&model, ic_u](double x) { return model.maxwellian(ic_u(x)); };
}

double cone_speed(const ModelDescriptor& model, const SampleBox& box) {
    if (box.dim() != model.N)
        throw ContractViolation("cone_speed: box must be in state space");
    HaltonSampler sampler(SampleBox::pair(box));
    double sup_num = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();
    for (int i = 0; i < box.count; ++i) {
        const VectorXd pair = sampler.point(i);
        const VectorXd U = pair.head(model.N), V = pair.tail(model.N);
        const MatrixXd A = model.hessian(U) * fd::jacobian(model.flux, V);
        sup_num = std::max(sup_num, A.jacobiSvd().singularValues()[0]);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(model.hessian(U),
                                                   Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    if (!(min_eig > 0.0))
        throw NumericError("cone_speed: sampled entropy Hessian not positive");
    return sup_num / min_eig;
}

IdentityResidualReport identity_residual(const ModelDescriptor& model,
                                         const SimulationRun& run_relax,
                                         const SimulationRun& run_eq, double eps) {
    if (!(eps > 0.0)) throw ContractViolation("identity_residual: eps > 0 required");
    const auto& rs = run_relax.snapshots;
    const auto& es = run_eq.snapshots;
    if (rs.size() < 2 || rs.size() != es.size())
        throw ContractViolation("identity_residual: missing matching snapshots");
    for (std::size_t k = 0; k < rs.size(); ++k) require_matching(rs[k], es[k]);

    const GridSpec grid = rs[0].grid;
    const int cells = grid.cells, n = model.n;
    const double dx = grid.dx();

    auto eta = [&](const VectorXd& u) { return equilibrium_entropy(model, u); };
    auto eta_grad = [&](const VectorXd& u) { return fd::gradient(eta, u); };
    auto f = [&](const VectorXd& u) { return equilibrium_flux(model, u); };

    // Pointwise terms of the balance at one snapshot pair (U, ubar).
    struct Slice {
        VectorXd Hr, Qr, Deps, S, J1, J2, J3, J4;
    };
    auto make_slice = [&](const StateField& rf, const StateField& ef) {
        Slice s;
        s.Hr.resize(cells);
        s.Qr.resize(cells);
        s.Deps.resize(cells);
        s.S.resize(cells);
        s.J1.resize(cells);
        s.J2.resize(cells);
        s.J3.resize(cells);
        s.J4.resize(cells);
        for (int i = 0; i < cells; ++i) {
            const VectorXd U = rf.cell(i);
            const VectorXd ub = ef.cell(i);
            const VectorXd u = model.projection * U;
            const VectorXd Mu = model.maxwellian(u);
            const VectorXd Mb = model.maxwellian(ub);
            s.Hr[i] = relative_entropy(model, U, ub);
            s.Qr[i] = relative_entropy_flux(model, U, ub);
            s.Deps[i] = dissipation(model, U) / eps;
            s.S[i] = source_bracket(model, U, ub);

            // central spatial derivative of the reference
            const VectorXd dub =
                (ef.cell((i + 1) % cells) - ef.cell((i + cells - 1) % cells)) /
                (2.0 * dx);
            const RowVectorXd w = (fd::hessian_from_gradient(eta_grad, ub) * dub)
                                      .transpose(); // D2eta(ub) dx_ubar
            s.J1[i] = -w.dot(f(u) - f(ub) - fd::jacobian(f, ub) * (u - ub));
            s.J2[i] = -w.dot(model.projection * (model.flux(U) - model.flux(Mu)));
            s.J3[i] = equilibrium_source(model, ub)
                          .dot((eta_grad(u) - eta_grad(ub) -
                                (u - ub).transpose() *
                                    fd::hessian_from_gradient(eta_grad, ub))
                                   .transpose());
            s.J4[i] = (model.entropy_grad(U) - model.entropy_grad(Mu))
                          .dot(model.source(Mb));
        }
        return s;
    };

    IdentityResidualReport report;
    Slice cur = make_slice(rs[0], es[0]);
    for (std::size_t k = 0; k + 1 < rs.size(); ++k) {
        Slice next = make_slice(rs[k + 1], es[k + 1]);
        const double dt = rs[k + 1].time - rs[k].time;
        if (!(dt > 0.0))
            throw ContractViolation("identity_residual: snapshot times not increasing");
        VectorXd res(cells);
        for (int i = 0; i < cells; ++i) {
            const double dQr = (cur.Qr[(i + 1) % cells] - cur.Qr[(i + cells - 1) % cells]) /
                               (2.0 * dx);
            res[i] = (next.Hr[i] - cur.Hr[i]) / dt + dQr + cur.Deps[i] + cur.S[i] -
                     (cur.J1[i] + cur.J2[i] + cur.J3[i] + cur.J4[i]);
        }
        report.times.push_back(rs[k].time);
        report.Hr.push_back(cur.Hr);
        report.Qr.push_back(cur.Qr);
        report.D_over_eps.push_back(cur.Deps);
        report.S.push_back(cur.S);
        report.J1.push_back(cur.J1);
        report.J2.push_back(cur.J2);
        report.J3.push_back(cur.J3);
        report.J4.push_back(cur.J4);
        report.residual.push_back(res);
        report.residual_l1.push_back(dx * res.lpNorm<1>());
        cur = std::move(next);
    }
    return report;
}

ConvergenceReport convergence_study(const ModelDescriptor& model,
                                    const GridSpec& grid,
                                    const std::function<VectorXd(double)>& ic_u,
                                    const TimeControl& tc,
                                    const std::vector<double>& eps_list,
                                    int floor_grid_factor) {
    grid.validate();
    if (eps_list.size() < 2)
        throw ContractViolation("convergence_study: at least two eps values required");
    for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
        if (!(eps_list[i] > eps_list[i + 1]))
            throw ContractViolation("convergence_study: eps_list must be strictly decreasing");
    for (double e : eps_list)
        if (!(e > 0.0))
            throw ContractViolation("convergence_study: eps > 0 required");
    if (floor_grid_factor < 2)
        throw ContractViolation("convergence_study: floor_grid_factor >= 2 required");

    const std::vector<double> times = uniform_output_times(tc.t_end);
    TimeControl quiet = tc;
    quiet.record_series = false;

    // Reference: equilibrium run on the refined grid, restricted back.
    GridSpec fine = grid;
    fine.cells = grid.cells * floor_grid_factor;
    const SimulationRun eq_fine = run_equilibrium(model, fine, ic_u, quiet, times);
    std::vector<StateField> reference;
    reference.reserve(eq_fine.snapshots.size());
    for (const auto& snap : eq_fine.snapshots)
        reference.push_back(restrict_field(snap, floor_grid_factor));

    // Discretization floor: the coarse equilibrium run lifted onto the
    // manifold, measured against the same reference in entropy units.
    const SimulationRun eq_coarse = run_equilibrium(model, grid, ic_u, quiet, times);
    if (eq_coarse.snapshots.size() != reference.size())
        throw NumericError("convergence_study: snapshot schedules diverged");
    double floor_est = 0.0;
    for (std::size_t k = 0; k < reference.size(); ++k) {
        StateField lifted;
        lifted.grid = grid;
        lifted.width = model.N;
        lifted.time = eq_coarse.snapshots[k].time;
        lifted.data.resize(grid.cells, model.N);
        for (int i = 0; i < grid.cells; ++i)
            lifted.data.row(i) =
                model.maxwellian(eq_coarse.snapshots[k].cell(i)).transpose();
        floor_est = std::max(
            floor_est, total_relative_entropy(model, lifted, reference[k]));
    }

    const auto ic = well_prepared_ic(model, ic_u);
    const int jobs = static_cast<int>(eps_list.size());
    std::vector<double> errors(jobs, 0.0), l2_errors(jobs, 0.0);
    std::vector<std::exception_ptr> failures(jobs);

    auto run_case = [&](int idx) {
        try {
            const SimulationRun run =
                run_relaxation(model, grid, ic, quiet, eps_list[idx], times);
            if (run.snapshots.size() != reference.size())
                throw NumericError("convergence_study: snapshot schedules diverged");
            double sup_hr = 0.0, sup_l2 = 0.0;
            for (std::size_t k = 0; k < reference.size(); ++k) {
                sup_hr = std::max(sup_hr, total_relative_entropy(
                                              model, run.snapshots[k], reference[k]));
                double l2 = 0.0;
                for (int i = 0; i < grid.cells; ++i)
                    l2 += (run.snapshots[k].cell(i) -
                           model.maxwellian(reference[k].cell(i)))
                              .squaredNorm();
                sup_l2 = std::max(sup_l2, std::sqrt(grid.dx() * l2));
            }
            errors[idx] = sup_hr;
            l2_errors[idx] = sup_l2;
        } catch (...) {
            failures[idx] = std::current_exception();
        }
    };

    const int workers = thread_cap(jobs);
    if (workers <= 1) {
        for (int i = 0; i < jobs; ++i) run_case(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> cursor{0};
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int i = cursor.fetch_add(1); i < jobs; i = cursor.fetch_add(1))
                    run_case(i);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& e : failures)
        if (e) std::rethrow_exception(e);

    ConvergenceReport report;
    report.eps_values = eps_list;
    report.errors = errors;
    report.l2_errors = l2_errors;
    report.floor_estimate = floor_est;
    std::vector<double> fit_x, fit_y;
    for (int i = 0; i < jobs; ++i) {
        const bool above = errors[i] > 3.0 * floor_est;
        report.used.push_back(above);
        if (above) {
            fit_x.push_back(eps_list[i]);
            fit_y.push_back(errors[i]);
        }
    }
    report.points_used = static_cast<int>(fit_x.size());
    if (report.points_used < 2)
        throw InconclusiveStudyError(
            "convergence study inconclusive: fewer than two eps points sit above "
            "the discretization floor; use a finer grid");
    report.fitted_slope = loglog_slope(fit_x, fit_y);
    return report;
}

void export_convergence_csv(const ConvergenceReport& report, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw NumericError("cannot open " + path + " for writing");
    os << "eps,sup_Hr,sup_L2,floor,used\n";
    for (std::size_t i = 0; i < report.eps_values.size(); ++i)
        os << csv::num(report.eps_values[i]) << "," << csv::num(report.errors[i])
           << "," << csv::num(report.l2_errors[i]) << ","
           << csv::num(report.floor_estimate) << "," << (report.used[i] ? 1 : 0)
           << "\n";
}

void export_identity_csv(const IdentityResidualReport& report,
                         const std::string& path) {
    std::ofstream os(path);
    if (!os) throw NumericError("cannot open " + path + " for writing");
    os << "t,residual_l1\n";
    for (std::size_t k = 0; k < report.times.size(); ++k)
        os << csv::num(report.times[k]) << "," << csv::num(report.residual_l1[k])
           << "\n";
}

std::string summary_text(const ConvergenceReport& report) {
    std::ostringstream os;
    os << "eps-convergence study\n";
    os << "  floor estimate: " << report.floor_estimate << "\n";
    os << "  fitted slope:   " << report.fitted_slope << " over "
       << report.points_used << " points\n";
    for (std::size_t i = 0; i < report.eps_values.size(); ++i)
        os << "  eps=" << report.eps_values[i] << "  sup_Hr=" << report.errors[i]
           << "  sup_L2=" << report.l2_errors[i]
           << (report.used[i] ? "" : "  (below floor)") << "\n";
    return os.str();
}

std::vector<double> uniform_output_times(double t_end, int count) {
    std::vector<double> times;
    for (int k = 1; k <= count; ++k) times.push_back(t_end * k / count);
    return times;
}

} // namespace relax
