#pragma once

#include <string>

#include "lindblad/params.hpp"

namespace lindblad {

/// Fully validated run configuration parsed from flat `key = value` text.
///
/// Keys (defaults in parentheses): m (1), omega (1), lambda (required),
/// mu (0), hbar (1), boltzmann (1); exactly one of bath_temperature or the
/// pair d_pp/d_qq (d_pq optional, 0); x10 (0), x20 (0); t_max (required for
/// time evolution), dt_output (t_max/100); fock_dim (60), fock_dt (1e-3/omega),
/// ode_dt (0.01/max(lambda, omega)); check_moments/check_fock/check_fp (true);
/// output_format ("csv"), output_path ("" = stdout).
struct RunConfig {
    OscillatorParams params;

    bool thermal = false;
    double bath_temperature = 0.0;
    DiffusionCoefficients diffusion; // effective coefficients, either mode

    double x10 = 0.0;
    double x20 = 0.0;

    bool has_t_max = false;
    double t_max = 0.0;
    double dt_output = 0.0;

    bool check_moments = true;
    bool check_fock = true;
    bool check_fp = true;
    int fock_dim = 60;
    double ode_dt = 0.0;  // 0 -> default
    double fock_dt = 0.0; // 0 -> default

    std::string output_format = "csv";
    std::string output_path;

    /// Fundamental-constraint report for the effective diffusion coefficients.
    ConstraintReport constraints;
};

/// Parse and validate config text. Unknown keys, duplicate keys and malformed
/// values raise ConfigError with a 1-based line number; parameter-domain
/// problems raise InputError; a thermal request outside lambda > |mu| raises
/// ConstraintError. A config whose coefficients merely fail the fundamental
/// constraints parses fine -- the verdict is in `constraints` and commands
/// decide what to do with it.
RunConfig parse_config(const std::string& text);

RunConfig parse_config_file(const std::string& path);

/// Replace (or append) the assignment of `key`, for parameter sweeps.
std::string override_key(const std::string& text, const std::string& key,
                         double value);

} // namespace lindblad
