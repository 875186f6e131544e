#pragma once

#include <complex>

#include "lindblad/gaussian_state.hpp"
#include "lindblad/params.hpp"

namespace lindblad {

/// Complex scalars of the closed-form propagator at a fixed time t.
///
/// a = (mu - i Omega)/omega lies on the unit circle, Lambda = -lambda - i Omega,
/// and d1 (complex) / d2 (real) are fixed combinations of the diffusion
/// coefficients. The g-functions carry all the time dependence of the
/// covariances; g2 = conj(g1) and b_w = g1*g2 - g3^2/4 is real and negative
/// for every valid state.
struct PropagatorScalars {
    std::complex<double> a;
    std::complex<double> big_lambda;
    std::complex<double> d1;
    double d2 = 0.0;
    std::complex<double> g1;
    std::complex<double> g2;
    double g3 = 0.0;
    double b_w = 0.0;
};

PropagatorScalars propagator_scalars(const OscillatorParams& params,
                                     const DiffusionCoefficients& d, double t);

/// B_w(t) assembled from its expanded damping/oscillation form (exp(-4 lambda t),
/// exp(-2 lambda t), exp(2 i Omega t) pieces) instead of the g-functions.
/// Independent route used for two-route consistency checks.
double bw_explicit(const OscillatorParams& params,
                   const DiffusionCoefficients& d, double t);

/// delta = -(hbar^2 omega^2 / 4 Omega^2) B_w.
double delta_from_bw(const OscillatorParams& params, double b_w);

struct MeanPoint {
    double mean_q = 0.0;
    double mean_p = 0.0;
};

/// Damped-oscillatory first moments for initial means (q0, p0).
MeanPoint mean_trajectory(const OscillatorParams& params, double q0, double p0,
                          double t);

/// Covariances at time t for the minimum-uncertainty wave-packet initial
/// condition (the only initial condition the closed form supports). Mean
/// fields of the returned state are zero; combine with mean_trajectory or use
/// evolve_state. Imaginary residues of the complex assembly are asserted
/// below 1e-12 relative and dropped; larger residues raise
/// NumericalConsistencyError.
GaussianState covariances(const OscillatorParams& params,
                          const DiffusionCoefficients& d, double t);

/// Full state at time t: wave-packet covariances plus the mean trajectory
/// started from (q0, p0).
GaussianState evolve_state(const OscillatorParams& params,
                           const DiffusionCoefficients& d, double q0, double p0,
                           double t);

struct AsymptoticCovariances {
    double sigma_qq = 0.0;
    double sigma_pp = 0.0;
    double sigma_pq = 0.0;
    double sigma = 0.0; // sigma_qq*sigma_pp - sigma_pq^2 at t = infinity
};

/// Stationary covariances (rational in the model parameters); requires
/// lambda > 0, otherwise there is no stationary state.
AsymptoticCovariances asymptotic_covariances(const OscillatorParams& params,
                                             const DiffusionCoefficients& d);

/// Minimum-uncertainty packet centered at dimensionless (x10, x20):
///   mean_q = x10 sqrt(2 hbar / m omega),  mean_p = x20 sqrt(2 hbar m omega),
///   sigma_qq = hbar/2m omega, sigma_pp = hbar m omega/2, sigma_pq = 0.
GaussianState initial_wave_packet(const OscillatorParams& params, double x10,
                                  double x20);

/// Gaussian Wigner density at phase-space point (q, p); strictly positive.
double wigner_value(const GaussianState& state, double q, double p);

} // namespace lindblad
