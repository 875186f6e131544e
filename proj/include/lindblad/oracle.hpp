#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "lindblad/gaussian_state.hpp"
#include "lindblad/params.hpp"
#include "lindblad/thermo.hpp"

// Independent numerical ground truths for the closed-form results: RK4
// integration of the first/second-moment ODEs, RK4 integration of the full
// master equation in a truncated Fock basis, a finite-difference residual
// checker for the Fokker-Planck equation, and quadrature utilities for the
// Wigner function. None of these reuse the closed-form propagator algebra.

namespace lindblad {

using SparseC = Eigen::SparseMatrix<std::complex<double>>;

// ---------------------------------------------------------------------------
// Moment-ODE integrator
// ---------------------------------------------------------------------------

/// Right-hand side of the first/second-moment ODEs implied by the linear
/// drift and constant diffusion of the phase-space equation of motion:
///   d<q>/dt  = -(lambda-mu)<q> + <p>/m
///   d<p>/dt  = -m omega^2 <q> - (lambda+mu)<p>
///   dsqq/dt  = -2(lambda-mu) sqq + 2 spq/m + 2 D_qq
///   dspp/dt  = -2(lambda+mu) spp - 2 m omega^2 spq + 2 D_pp
///   dspq/dt  = -2 lambda spq + spp/m - m omega^2 sqq + 2 D_pq
GaussianState moment_rhs(const OscillatorParams& params,
                         const DiffusionCoefficients& d,
                         const GaussianState& s);

struct MomentTrajectory {
    std::vector<double> times;
    std::vector<GaussianState> states;
    double convergence_error = 0.0; // max step-halving deviation
    double min_delta = 0.0;         // smallest delta along the trajectory

    const GaussianState& back() const { return states.back(); }
};

/// Fixed-step RK4 integration of the moment ODEs from state0 to t_end.
/// dt <= 0 selects the default 0.01/max(lambda, omega). Every accepted step is
/// re-run at dt/2 ("step halving") and a disagreement above 1e-6 relative
/// raises ConvergenceError.
MomentTrajectory integrate_moments(const OscillatorParams& params,
                                   const DiffusionCoefficients& d,
                                   const GaussianState& state0, double t_end,
                                   double dt = 0.0);

// ---------------------------------------------------------------------------
// Truncated Fock-basis master-equation integrator
// ---------------------------------------------------------------------------

/// Density matrix in the number basis of H0, truncated to dim levels.
struct FockDensityMatrix {
    int dim = 0;
    Eigen::MatrixXcd elements;

    double trace_real() const { return elements.trace().real(); }
    double hermiticity_error() const;
};

SparseC fock_annihilation(int dim);
SparseC fock_position(const OscillatorParams& params, int dim);
SparseC fock_momentum(const OscillatorParams& params, int dim);

/// Coherent-state amplitudes c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!).
Eigen::VectorXcd fock_coherent_vector(std::complex<double> alpha, int dim);

/// Fixed-step RK4 integrator for the master equation, written in the
/// left/right/sandwich form
///   L(rho) = G rho + rho G^dag + c_qp q rho p + conj(c_qp) p rho q
///            + (2 D_pp/hbar^2) q rho q + (2 D_qq/hbar^2) p rho p
/// with banded (sparse) operators. The initial state is the coherent state
/// alpha = x10 + i x20, matching the wave-packet Wigner function.
///
/// Raises TruncationError when the initial state carries more than 1e-10
/// weight above level dim-10 or when |Tr rho - 1| drifts beyond 1e-5.
class FockLindbladIntegrator {
  public:
    FockLindbladIntegrator(const OscillatorParams& params,
                           const DiffusionCoefficients& d, double x10,
                           double x20, int dim, double dt = 0.0);

    /// Advance to time t (t >= current time); steps at the fixed dt with one
    /// shorter final step so the returned state is exactly at t.
    void advance_to(double t);

    double time() const { return time_; }
    double max_trace_drift() const { return max_trace_drift_; }
    FockDensityMatrix density_matrix() const { return {dim_, rho_}; }

  private:
    void step(double h);
    Eigen::MatrixXcd apply_generator(const Eigen::MatrixXcd& x) const;

    int dim_;
    double dt_;
    double time_ = 0.0;
    double max_trace_drift_ = 0.0;
    SparseC q_, p_, g_, g_adj_;
    std::complex<double> c_qp_, c_pq_;
    double c_qq_ = 0.0, c_pp_ = 0.0;
    Eigen::MatrixXcd rho_;
};

/// One-shot convenience wrapper around FockLindbladIntegrator.
/// dt <= 0 selects the default 1e-3/omega; dim <= 0 selects 60.
FockDensityMatrix integrate_lindblad_fock(const OscillatorParams& params,
                                          const DiffusionCoefficients& d,
                                          double x10, double x20, double t_end,
                                          double dt = 0.0, int dim = 0);

/// Entropy in units of k from the eigenvalues: -sum l_i ln l_i over
/// eigenvalues above 1e-14 (smaller clamped to zero). Eigenvalues below
/// -1e-8 mean the matrix is not a density matrix and raise InputError.
double fock_entropy(const FockDensityMatrix& rho);

/// Tr rho^2.
double fock_purity(const FockDensityMatrix& rho);

/// Means and covariances extracted by matrix traces.
GaussianState fock_observables(const OscillatorParams& params,
                               const FockDensityMatrix& rho);

/// Gibbs density matrix diag((1 - e^-x) e^-nx), x = hbar omega / k T.
FockDensityMatrix fock_gibbs_matrix(const OscillatorParams& params,
                                    double temperature, int dim);

/// Matrix exponential reconstruction of the closed-form density operator from
/// its exponent coefficients (spectral decomposition of the Hermitian
/// exponent). pure_limit coefficients raise InputError.
FockDensityMatrix fock_density_from_coefficients(
    const OscillatorParams& params, const GaussianState& state,
    const DensityOperatorCoefficients& coeffs, int dim);

// ---------------------------------------------------------------------------
// Fokker-Planck residual checker
// ---------------------------------------------------------------------------

/// Where and how finely to probe the Fokker-Planck equation. Residuals are
/// evaluated at samples_per_axis^2 points covering +-half_width_sigmas
/// standard deviations around the mean (in the dimensionless phase-space
/// variables); each residual uses central-difference stencils of spacing
/// stencil_h (in units of the smaller standard deviation) and an analytic
/// re-evaluation at t +- time_delta/omega for the time derivative.
struct FpGrid {
    double half_width_sigmas = 6.0;
    int samples_per_axis = 41;
    double stencil_h = 1.0 / 64.0;
    double time_delta = 1e-4;
};

struct FpResidualReport {
    double h = 0.0;          // stencil spacing actually used (x-units)
    double max_abs = 0.0;    // max |residual| over the sample grid
    double l2 = 0.0;         // discrete L2 norm over the sample grid
    double term_scale = 0.0; // largest individual term magnitude

    double max_rel() const { return max_abs / term_scale; }
};

/// Plug the analytic Wigner solution at time t > 0 into the Fokker-Planck
/// equation with second-order stencils; the residual vanishes as
/// O(h^2) + O(time_delta^2).
FpResidualReport fp_residual(const OscillatorParams& params,
                             const DiffusionCoefficients& d, double t,
                             const FpGrid& grid = {});

/// Same operator applied to the stationary Wigner function built from the
/// asymptotic covariances; the time derivative is identically zero.
FpResidualReport fp_residual_stationary(const OscillatorParams& params,
                                        const DiffusionCoefficients& d,
                                        const FpGrid& grid = {});

// ---------------------------------------------------------------------------
// Wigner quadrature
// ---------------------------------------------------------------------------

/// Blunt tensor-trapezoid quadrature of the Wigner density over
/// +-n_sigma standard deviations along the principal axes of the covariance.
struct WignerQuadrature {
    double mass = 0.0; // integral of W
    double mean_q = 0.0;
    double mean_p = 0.0;
    double sigma_qq = 0.0;
    double sigma_pp = 0.0;
    double sigma_pq = 0.0;
};

WignerQuadrature wigner_quadrature(const GaussianState& state,
                                   double n_sigma = 8.0,
                                   int points_per_axis = 241);

} // namespace lindblad
