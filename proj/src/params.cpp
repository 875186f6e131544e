#include "lindblad/params.hpp"

#include <cmath>

namespace lindblad {

namespace {

bool all_finite(std::initializer_list<double> xs) {
    for (double x : xs) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

} // namespace

OscillatorParams::OscillatorParams(double m_, double omega_, double lambda_,
                                   double mu_, double hbar_, double boltzmann_)
    : m(m_), omega(omega_), lambda(lambda_), mu(mu_), hbar(hbar_),
      boltzmann(boltzmann_) {
    if (!all_finite({m, omega, lambda, mu, hbar, boltzmann}))
        throw InputError("oscillator parameters must be finite");
    if (m <= 0.0) throw InputError("mass must be positive");
    if (omega <= 0.0) throw InputError("omega must be positive");
    if (hbar <= 0.0) throw InputError("hbar must be positive");
    if (boltzmann <= 0.0) throw InputError("boltzmann constant must be positive");
    if (lambda < 0.0) throw InputError("friction constant lambda must be >= 0");
    if (std::abs(mu) >= omega)
        throw InputError("only the underdamped regime |mu| < omega is supported");
}

double OscillatorParams::big_omega() const {
    return std::sqrt(omega * omega - mu * mu);
}

ConstraintReport validate_constraints(const OscillatorParams& params,
                                      const DiffusionCoefficients& d) {
    if (!all_finite({d.d_pp, d.d_qq, d.d_pq}))
        throw InputError("diffusion coefficients must be finite");

    ConstraintReport report;
    report.margin_dpp = d.d_pp;
    report.margin_dqq = d.d_qq;
    report.margin_uncertainty = d.d_pp * d.d_qq - d.d_pq * d.d_pq -
                                params.lambda * params.lambda * params.hbar *
                                    params.hbar / 4.0;
    report.pass_dpp = report.margin_dpp > 0.0;
    report.pass_dqq = report.margin_dqq > 0.0;
    report.pass_uncertainty = report.margin_uncertainty >= 0.0;
    return report;
}

DiffusionCoefficients thermal_coefficients(const OscillatorParams& params,
                                           double temperature) {
    if (!std::isfinite(temperature) || temperature <= 0.0)
        throw InputError("bath temperature must be positive");
    if (params.lambda <= std::abs(params.mu))
        throw ConstraintError(
            "thermal bath requires lambda > |mu|; the Gibbs limit does not "
            "exist otherwise");

    const double coth = 1.0 / std::tanh(params.hbar * params.omega /
                                        (2.0 * params.boltzmann * temperature));
    DiffusionCoefficients d;
    d.d_pp = 0.5 * (params.lambda + params.mu) * params.hbar * params.m *
             params.omega * coth;
    d.d_qq = 0.5 * (params.lambda - params.mu) * params.hbar /
             (params.m * params.omega) * coth;
    d.d_pq = 0.0;
    return d;
}

} // namespace lindblad
