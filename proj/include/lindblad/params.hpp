#pragma once

#include "lindblad/errors.hpp"

namespace lindblad {

/// Physical constants and model parameters of the damped oscillator.
/// Only the underdamped regime |mu| < omega is representable; construction
/// rejects anything else.
struct OscillatorParams {
    double m = 1.0;         // mass
    double omega = 1.0;     // oscillator frequency
    double lambda = 0.0;    // friction constant
    double mu = 0.0;        // asymmetry parameter, |mu| < omega
    double hbar = 1.0;      // reduced Planck constant
    double boltzmann = 1.0; // Boltzmann constant

    OscillatorParams() = default;
    OscillatorParams(double m_, double omega_, double lambda_, double mu_,
                     double hbar_ = 1.0, double boltzmann_ = 1.0);

    /// Shifted frequency Omega = sqrt(omega^2 - mu^2), positive by construction.
    double big_omega() const;
};

/// Environment-induced noise strengths entering the master equation.
struct DiffusionCoefficients {
    double d_pp = 0.0; // momentum diffusion
    double d_qq = 0.0; // position diffusion
    double d_pq = 0.0; // cross diffusion
};

/// Per-inequality outcome of the fundamental constraints on the diffusion
/// coefficients:
///   (i)  D_pp > 0
///   (ii) D_qq > 0
///   (iii) D_pp*D_qq - D_pq^2 >= lambda^2 hbar^2 / 4
/// Margins are the exact left-minus-right arithmetic, no tolerance applied.
struct ConstraintReport {
    double margin_dpp = 0.0;
    double margin_dqq = 0.0;
    double margin_uncertainty = 0.0;
    bool pass_dpp = false;
    bool pass_dqq = false;
    bool pass_uncertainty = false;

    bool valid() const { return pass_dpp && pass_dqq && pass_uncertainty; }
};

ConstraintReport validate_constraints(const OscillatorParams& params,
                                      const DiffusionCoefficients& d);

/// Coefficients for a thermal bath at temperature T (asymptotic Gibbs state):
///   D_pp = (lambda+mu)/2 * hbar m omega coth(hbar omega / 2kT)
///   D_qq = (lambda-mu)/2 * hbar/(m omega) coth(hbar omega / 2kT)
///   D_pq = 0
/// Requires T > 0 and lambda > |mu|. Note the output still has to be checked
/// with validate_constraints: at low temperature with mu != 0 inequality (iii)
/// can fail even though lambda > |mu|.
DiffusionCoefficients thermal_coefficients(const OscillatorParams& params,
                                           double temperature);

} // namespace lindblad
