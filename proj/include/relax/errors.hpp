#pragma once

#include <stdexcept>
#include <string>

namespace relax {

/// Violated precondition or dimension mismatch in a library call.
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A model parameter set failed its build-time invariants.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative numerics (root finding, quadrature) failed to converge.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Explicit step was asked to exceed its CFL limit.
class StepSizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Simulation state became non-finite.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(double time, int cell, const std::string& what)
        : std::runtime_error(what), time(time), cell(cell) {}
    double time;
    int cell;
};

/// The equilibrium reference left the smooth regime (gradient growth heuristic).
class SmoothnessLostError : public std::runtime_error {
public:
    SmoothnessLostError(double time, const std::string& what)
        : std::runtime_error(what), time(time) {}
    double time;
};

/// Every eps point of a convergence study sat below the discretization floor.
class InconclusiveStudyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Config file parse or semantic failure; line 0 means semantic.
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& what)
        : std::runtime_error(what), line(line) {}
    int line;
};

} // namespace relax
