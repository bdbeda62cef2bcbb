#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "relax/config.hpp"
#include "relax/csv.hpp"
#include "relax/diagnostics.hpp"
#include "relax/hypotheses.hpp"
#include "relax/solver.hpp"

namespace {

using namespace relax;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig load(const std::string& path, const std::vector<std::string>& overrides,
               Mode invoked) {
    RunConfig cfg = parse_config(read_file(path));
    for (const auto& ov : overrides) apply_override(cfg, ov);
    if (cfg.mode && *cfg.mode != invoked)
        throw ConfigError(0, std::string("config requests mode '") +
                                 to_string(*cfg.mode) + "' but subcommand is '" +
                                 to_string(invoked) + "'");
    return cfg;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError(0, "cannot create output_dir '" + dir + "'");
}

int do_validate(const RunConfig& cfg) {
    const ModelDescriptor model = build_model(cfg);
    const auto reports = validate_all(model, cfg.samples, cfg.seed);
    ensure_dir(cfg.output_dir);

    std::ofstream hyp(cfg.output_dir + "/hypotheses.csv");
    hyp << "hypothesis,claimed,passed,worst_violation,samples\n";
    bool claimed_failure = false;
    std::ostringstream summary;
    summary << "hypothesis validation: model " << model.name << ", "
            << cfg.samples << " samples, seed " << cfg.seed << "\n";
    for (const auto& r : reports) {
        const bool claimed = model.claims.count(r.hypothesis_id) > 0;
        if (claimed && !r.passed) claimed_failure = true;
        hyp << to_string(r.hypothesis_id) << "," << (claimed ? 1 : 0) << ","
            << (r.passed ? 1 : 0) << "," << csv::num(r.worst_violation) << ","
            << r.samples_used << "\n";
        summary << "  " << to_string(r.hypothesis_id)
                << (claimed ? " (claimed): " : " (unclaimed): ")
                << (r.passed ? "pass" : "FAIL")
                << "  worst=" << r.worst_violation << "\n";
    }
    summary << (claimed_failure ? "RESULT: FAIL\n" : "RESULT: ok\n");
    std::ofstream(cfg.output_dir + "/summary.txt") << summary.str();
    std::cout << summary.str();
    return claimed_failure ? 2 : 0;
}

int do_run(const RunConfig& cfg) {
    const ModelDescriptor model = build_model(cfg);
    const GridSpec grid = make_grid(cfg);
    const auto ic_u = make_ic(cfg, model);
    TimeControl tc;
    tc.cfl = cfg.cfl;
    tc.t_end = cfg.t_end;
    const auto times = uniform_output_times(cfg.t_end, cfg.outputs);
    const SimulationRun run =
        run_relaxation(model, grid, well_prepared_ic(model, ic_u), tc, cfg.eps, times);
    ensure_dir(cfg.output_dir);

    for (const auto& snap : run.snapshots)
        export_snapshot_csv(snap, model.component_names,
                            snapshot_filename(cfg.output_dir + "/" + model.name,
                                              snap.time));
    std::ofstream series(cfg.output_dir + "/series.csv");
    series << "t,dt,total_entropy,total_dissipation,min_Z,max_Z\n";
    for (const auto& rec : run.series)
        series << csv::num(rec.t) << "," << csv::num(rec.dt) << ","
               << csv::num(rec.total_entropy) << ","
               << csv::num(rec.total_dissipation) << "," << csv::num(rec.min_Z)
               << "," << csv::num(rec.max_Z) << "\n";

    std::ostringstream summary;
    summary << "run: model " << model.name << ", eps " << cfg.eps << ", "
            << grid.cells << " cells, t_end " << cfg.t_end << ", "
            << run.snapshots.size() << " snapshots, " << run.series.size()
            << " steps\n";
    std::ofstream(cfg.output_dir + "/summary.txt") << summary.str();
    std::cout << summary.str();
    return 0;
}

int do_study(const RunConfig& cfg) {
    const ModelDescriptor model = build_model(cfg);
    const GridSpec grid = make_grid(cfg);
    const auto ic_u = make_ic(cfg, model);
    TimeControl tc;
    tc.cfl = cfg.cfl;
    tc.t_end = cfg.t_end;
    tc.record_series = false;
    if (cfg.eps_list.empty())
        throw ConfigError(0, "study mode requires [study] eps_list");
    const ConvergenceReport report = convergence_study(
        model, grid, ic_u, tc, cfg.eps_list, cfg.floor_grid_factor);
    ensure_dir(cfg.output_dir);
    export_convergence_csv(report, cfg.output_dir + "/convergence.csv");
    std::ostringstream summary;
    summary << summary_text(report);
    summary << "  slope threshold: " << cfg.slope_min << "\n";
    const bool ok = report.fitted_slope >= cfg.slope_min;
    summary << (ok ? "RESULT: ok\n" : "RESULT: FAIL (slope below threshold)\n");
    std::ofstream(cfg.output_dir + "/summary.txt") << summary.str();
    std::cout << summary.str();
    return ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"relaxation-system laboratory: hypothesis validation, "
                 "simulation runs, and eps-convergence studies"};
    app.require_subcommand(1);

    struct Args {
        std::string config;
        std::vector<std::string> overrides;
    };
    Args va, ra, sa;
    auto add = [](CLI::App* sub, Args& args) {
        sub->add_option("config", args.config, "config file path")->required();
        sub->add_option("--override", args.overrides,
                        "key=value or section.key=value, applied after parsing");
    };
    add(app.add_subcommand("validate", "sample the structural hypotheses"), va);
    add(app.add_subcommand("run", "single relaxation simulation"), ra);
    add(app.add_subcommand("study", "eps-convergence study"), sa);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("validate"))
            return do_validate(load(va.config, va.overrides, relax::Mode::validate));
        if (app.got_subcommand("run"))
            return do_run(load(ra.config, ra.overrides, relax::Mode::run));
        const relax::RunConfig cfg = load(sa.config, sa.overrides, relax::Mode::study);
        try {
            return do_study(cfg);
        } catch (const relax::ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            // Study could not produce a conclusive slope (inconclusive fit,
            // blow-up, smoothness loss, ...).
            std::cerr << "study failed: " << e.what() << "\n";
            return 3;
        }
    } catch (const relax::ConfigError& e) {
        if (e.line > 0)
            std::cerr << "config error (line " << e.line << "): " << e.what() << "\n";
        else
            std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
