#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relax/grid.hpp"
#include "relax/model.hpp"

namespace relax {

enum class Mode { validate, run, study };

/// Fully-resolved run description. Parsed from the flat sectioned key=value
/// format ([model], [grid], [time], [study] plus top-level keys); unknown
/// keys are hard errors.
struct RunConfig {
    std::optional<Mode> mode;
    std::string output_dir = "out";
    std::uint64_t seed = 0;
    int samples = 10000;
    double eps = 1e-3;

    std::string ic = "sine"; // constant | sine | gaussian-bump
    double ic_amplitude = 0.1;
    int ic_wavenumber = 1;

    // [model]
    std::string model_name; // elasticity | combustion | symmetric
    std::optional<double> gamma, Gamma, E;
    std::optional<double> g2_coeff;        // elasticity: g2(v) = -g2_coeff * v
    std::optional<double> a, c, K, Cbar;   // combustion constitutive scalars
    std::optional<double> delta, g_coeff;  // symmetric

    // [grid]
    double x_lo = 0.0, x_hi = 1.0;
    int cells = 256;

    // [time]
    double cfl = 0.45;
    double t_end = 0.2;
    int outputs = 20;

    // [study]
    std::vector<double> eps_list;
    int floor_grid_factor = 4;
    double slope_min = 0.8;
};

/// Parses and semantically validates; throws ConfigError with the offending
/// line (0 for semantic failures).
RunConfig parse_config(const std::string& text);

/// Applies one "key=value" or "section.key=value" override and re-validates.
void apply_override(RunConfig& config, const std::string& spec);

const char* to_string(Mode mode);

/// Instantiates the named built-in model with the scalar overrides applied.
ModelDescriptor build_model(const RunConfig& config);

/// Equilibrium initial data from the named preset, sized for the model.
std::function<VectorXd(double)> make_ic(const RunConfig& config,
                                        const ModelDescriptor& model);

GridSpec make_grid(const RunConfig& config);

} // namespace relax
