#include "lindblad/thermo.hpp"

#include <cmath>
#include <limits>

#include "lindblad/errors.hpp"

namespace lindblad {

namespace {

constexpr double kPureSeriesThreshold = 1e-9;

} // namespace

double nu_of_delta(const OscillatorParams& params, double delta) {
    const double floor = params.hbar * params.hbar / 4.0;
    if (!std::isfinite(delta) || delta < floor * (1.0 - 1e-12))
        throw InputError("delta below the pure-state bound hbar^2/4");
    if (delta < floor) delta = floor;
    return (delta - floor) /
           (params.hbar * (std::sqrt(delta) + params.hbar / 2.0));
}

double nu_from_bw(const OscillatorParams& params, double b_w) {
    if (!(b_w < 0.0))
        throw NumericalConsistencyError("B_w must be negative for valid states");
    const double big_omega2 =
        params.omega * params.omega - params.mu * params.mu;
    const double u = params.omega * params.omega * (-b_w);
    return (u - big_omega2) /
           (2.0 * std::sqrt(big_omega2) * (std::sqrt(u) + std::sqrt(big_omega2)));
}

double entropy(double nu) {
    if (!(nu >= 0.0)) throw InputError("nu must be >= 0");
    if (nu == 0.0) return 0.0;
    if (nu < kPureSeriesThreshold) return nu * (1.0 - std::log(nu));
    return (nu + 1.0) * std::log(nu + 1.0) - nu * std::log(nu);
}

double effective_temperature(const OscillatorParams& params, double nu) {
    if (!(nu >= 0.0)) throw InputError("nu must be >= 0");
    if (nu == 0.0) return 0.0;
    return params.hbar * params.omega /
           (params.boltzmann * std::log1p(1.0 / nu));
}

double entropy_from_effective_temperature(const OscillatorParams& params,
                                          double t_eff) {
    if (!(t_eff >= 0.0)) throw InputError("effective temperature must be >= 0");
    if (t_eff == 0.0) return 0.0;
    const double x = params.hbar * params.omega / (params.boltzmann * t_eff);
    return x / std::expm1(x) - std::log(-std::expm1(-x));
}

double purity_of_nu(double nu) {
    if (!(nu >= 0.0)) throw InputError("nu must be >= 0");
    return 1.0 / (2.0 * nu + 1.0);
}

double asymptotic_nu(const OscillatorParams& params,
                     const DiffusionCoefficients& d) {
    if (params.lambda <= 0.0)
        throw InputError("asymptotic nu requires lambda > 0");

    const double big_omega = params.big_omega();
    const std::complex<double> a(params.mu / params.omega,
                                 -big_omega / params.omega);
    const double m_omega = params.m * params.omega;
    const std::complex<double> d1 =
        (a * a * m_omega * d.d_qq + 2.0 * a * d.d_pq + d.d_pp / m_omega) /
        params.hbar;
    const double d2 = (m_omega * d.d_qq + 2.0 * params.mu * d.d_pq / params.omega +
                       d.d_pp / m_omega) /
                      params.hbar;

    const double radicand =
        d2 * d2 / (params.lambda * params.lambda) -
        std::norm(d1) / (params.lambda * params.lambda + big_omega * big_omega);
    if (radicand < 0.0)
        throw ConstraintError(
            "negative radicand in asymptotic nu: diffusion coefficients violate "
            "the fundamental constraints");

    const double u = params.omega * params.omega * radicand;
    const double big_omega2 = big_omega * big_omega;
    return (u - big_omega2) /
           (2.0 * big_omega * (std::sqrt(u) + big_omega));
}

double expected_log_rho(const OscillatorParams& params, double delta) {
    const double hbar = params.hbar;
    const double floor = hbar * hbar / 4.0;
    if (!std::isfinite(delta) || delta < floor * (1.0 - 1e-12))
        throw InputError("delta below the pure-state bound hbar^2/4");
    if (delta <= floor) return -std::numeric_limits<double>::infinity();

    const double root = std::sqrt(delta);
    return std::log(hbar) - 0.5 * std::log(delta - floor) -
           (root / hbar) * std::log((2.0 * root + hbar) / (2.0 * root - hbar));
}

DensityOperatorCoefficients density_operator_coefficients(
    const OscillatorParams& params, const GaussianState& state) {
    using cplx = std::complex<double>;
    const double hbar = params.hbar;
    const double delta = state.delta();
    const double floor = hbar * hbar / 4.0;
    if (!std::isfinite(delta) || delta < floor * (1.0 - 1e-12))
        throw InputError("delta below the pure-state bound hbar^2/4");

    DensityOperatorCoefficients c;
    if (delta <= floor * (1.0 + 1e-12)) {
        // Projector limit: kappa diverges, no exponential form exists.
        c.pure_limit = true;
        return c;
    }

    const double root = std::sqrt(delta);
    const double log_ratio =
        std::log((2.0 * root + hbar) / (2.0 * root - hbar));
    c.kappa = log_ratio / (2.0 * hbar * root);

    // The same scalar through the arccosh form; the two must agree.
    const double x = 1.0 + 2.0 * hbar * hbar / (4.0 * delta - hbar * hbar);
    const double acosh_form = std::log(x + std::sqrt(x * x - 1.0));
    if (std::abs(acosh_form - log_ratio) > 1e-10 * log_ratio)
        throw NumericalConsistencyError(
            "arccosh and log forms of the density-operator scalar disagree");

    c.quad_qq = -c.kappa * state.sigma_pp;
    c.quad_pp = -c.kappa * state.sigma_qq;
    c.quad_cross = c.kappa * state.sigma_pq;

    c.normalization = 2.0 * hbar / std::sqrt(4.0 * delta - hbar * hbar);
    const cplx xi(delta + floor, hbar * state.sigma_pq);
    c.log_term = 0.5 * std::log(4.0 * xi / (4.0 * delta - hbar * hbar));

    // hbar/sqrt(xi) * exp(log_term) collapses to the real normalization.
    const cplx composed = hbar / std::sqrt(xi) * std::exp(c.log_term);
    if (std::abs(composed - cplx(c.normalization, 0.0)) >
        1e-12 * c.normalization)
        throw NumericalConsistencyError(
            "complex prefactor composition does not reduce to the real "
            "normalization");
    return c;
}

ThermoReport thermo_report(const OscillatorParams& params, double t,
                           const GaussianState& state) {
    ThermoReport report;
    report.t = t;
    report.delta = state.delta();
    report.nu = nu_of_delta(params, report.delta);
    report.entropy = entropy(report.nu);
    report.t_eff = effective_temperature(params, report.nu);
    report.purity = purity_of_nu(report.nu);
    return report;
}

} // namespace lindblad
