#pragma once

#include <Eigen/Core>
#include <vector>

#include "relax/errors.hpp"

namespace relax {

/// Uniform periodic 1-D cell layout.
struct GridSpec {
    enum class Boundary { periodic };

    double x_lo = 0.0;
    double x_hi = 1.0;
    int cells = 0;
    Boundary boundary = Boundary::periodic;

    double dx() const { return (x_hi - x_lo) / cells; }
    double center(int i) const { return x_lo + (i + 0.5) * dx(); }

    void validate() const {
        if (cells < 8)
            throw ContractViolation("GridSpec: cells >= 8 required");
        if (!(x_hi > x_lo))
            throw ContractViolation("GridSpec: x_hi > x_lo required");
    }

    bool operator==(const GridSpec&) const = default;
};

/// Cell-averaged field of `width` components at a fixed time.
struct StateField {
    GridSpec grid;
    int width = 0;
    Eigen::MatrixXd data; // cells x width
    double time = 0.0;

    Eigen::VectorXd cell(int i) const { return data.row(i).transpose(); }
};

struct TimeControl {
    double cfl = 0.45;
    double t_end = 0.0;
    long max_steps = 50'000'000;
    // Per-step entropy/dissipation series cost one entropy evaluation per
    // cell per step; studies switch them off.
    bool record_series = true;
};

struct SeriesRecord {
    double t = 0.0;
    double dt = 0.0;
    double total_entropy = 0.0;
    double total_dissipation = 0.0; // 0 for equilibrium runs
    double min_Z = 0.0, max_Z = 0.0; // meaningful only when the model carries Z
};

struct SimulationRun {
    std::vector<StateField> snapshots; // at requested output times, increasing
    std::vector<SeriesRecord> series;
};

} // namespace relax
