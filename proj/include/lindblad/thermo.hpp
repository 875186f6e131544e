#pragma once

#include <complex>

#include "lindblad/gaussian_state.hpp"
#include "lindblad/params.hpp"

namespace lindblad {

/// Effective phonon-number parameter nu = sqrt(delta)/hbar - 1/2.
/// Evaluated in the cancellation-free form
///   nu = (delta - hbar^2/4) / (hbar (sqrt(delta) + hbar/2)).
/// delta below hbar^2/4 by more than 1e-12 relative raises InputError;
/// smaller dips are clamped to the pure-state boundary.
double nu_of_delta(const OscillatorParams& params, double delta);

/// Same quantity through the propagator route nu = (omega/2 Omega) sqrt(-B_w) - 1/2,
/// also in cancellation-free form. B_w >= 0 raises NumericalConsistencyError.
double nu_from_bw(const OscillatorParams& params, double b_w);

/// Von Neumann entropy in units of k:
///   S/k = (nu+1) ln(nu+1) - nu ln(nu),   S(0)/k := 0.
/// Below nu = 1e-9 the series limit nu (1 - ln nu) is used.
double entropy(double nu);

/// Effective temperature T_e = hbar omega / (k ln((nu+1)/nu)); exactly 0 at nu = 0.
double effective_temperature(const OscillatorParams& params, double nu);

/// Entropy in units of k expressed through the effective temperature:
///   S/k = x/(e^x - 1) - ln(1 - e^-x),  x = hbar omega / (k T_e);  0 at T_e = 0.
double entropy_from_effective_temperature(const OscillatorParams& params,
                                          double t_eff);

/// Purity of a single-mode Gaussian state, Tr rho^2 = 1/(2 nu + 1).
double purity_of_nu(double nu);

/// Asymptotic value s of nu (lambda > 0):
///   s = (omega / 2 Omega) sqrt(d2^2/lambda^2 - |d1|^2/(lambda^2 + Omega^2)) - 1/2.
/// A negative radicand (violated constraints) raises ConstraintError.
double asymptotic_nu(const OscillatorParams& params,
                     const DiffusionCoefficients& d);

/// Expectation value of ln(rho) for a Gaussian state with covariance
/// determinant delta:
///   <ln rho> = ln hbar - (1/2) ln(delta - hbar^2/4)
///              - (sqrt(delta)/hbar) ln((2 sqrt(delta)+hbar)/(2 sqrt(delta)-hbar)).
/// Returns -infinity at or below the pure-state boundary.
double expected_log_rho(const OscillatorParams& params, double delta);

/// Coefficients of the closed-form density operator
///   rho = normalization * exp( quad_qq (q-<q>)^2 + quad_pp (p-<p>)^2
///                              + quad_cross ((q-<q>)(p-<p>) + (p-<p>)(q-<q>)) )
/// with
///   kappa      = ln((2 sqrt(delta)+hbar)/(2 sqrt(delta)-hbar)) / (2 hbar sqrt(delta))
///   quad_qq    = -kappa * sigma_pp
///   quad_pp    = -kappa * sigma_qq
///   quad_cross = +kappa * sigma_pq
///   normalization = 2 hbar / sqrt(4 delta - hbar^2)
/// log_term keeps the complex log prefactor (1/2) ln(4 xi/(4 delta - hbar^2)),
/// xi = delta + hbar^2/4 + i hbar sigma_pq; its composition with hbar/sqrt(xi)
/// collapses to the real normalization above (asserted numerically).
///
/// At the pure-state boundary (delta <= hbar^2/4 within tolerance) pure_limit
/// is set and the numeric fields are not meaningful: the operator degenerates
/// to a projector and has no exponential form.
struct DensityOperatorCoefficients {
    bool pure_limit = false;
    double normalization = 0.0;
    double kappa = 0.0;
    double quad_qq = 0.0;
    double quad_pp = 0.0;
    double quad_cross = 0.0;
    std::complex<double> log_term;
};

DensityOperatorCoefficients density_operator_coefficients(
    const OscillatorParams& params, const GaussianState& state);

/// One output row of the time series: entropy in units of k, t_eff = 0 at the
/// pure start, purity = 1/(2 nu + 1).
struct ThermoReport {
    double t = 0.0;
    double nu = 0.0;
    double entropy = 0.0;
    double t_eff = 0.0;
    double purity = 0.0;
    double delta = 0.0;
};

ThermoReport thermo_report(const OscillatorParams& params, double t,
                           const GaussianState& state);

} // namespace lindblad
