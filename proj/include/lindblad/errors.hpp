#pragma once

#include <stdexcept>
#include <string>

namespace lindblad {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite or out-of-domain inputs (bad masses, overdamped regime, T <= 0, ...).
struct InputError : Error {
    using Error::Error;
};

// The fundamental diffusion-coefficient inequalities are violated, or a thermal
// bath was requested outside lambda > |mu| where they cannot hold.
struct ConstraintError : Error {
    using Error::Error;
};

// A quantity that must come out real (or a required sign condition) failed its
// numerical-consistency check.
struct NumericalConsistencyError : Error {
    using Error::Error;
};

// Step-halving disagreement in an integrator.
struct ConvergenceError : Error {
    using Error::Error;
};

// Fock-space truncation too small for the requested evolution.
struct TruncationError : Error {
    using Error::Error;
};

// Problem in a config file; line_number is 1-based, 0 when not tied to a line.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_number(line) {}

    int line_number;
};

} // namespace lindblad
