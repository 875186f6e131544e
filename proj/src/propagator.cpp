#include "lindblad/propagator.hpp"

#include <cmath>

#include "lindblad/errors.hpp"

namespace lindblad {

namespace {

using cplx = std::complex<double>;

// Extract the real part of a complex expression whose imaginary part must
// cancel; `scale` is the magnitude of the terms combined.
double real_checked(cplx z, double scale, const char* what) {
    if (std::abs(z.imag()) > 1e-12 * scale)
        throw NumericalConsistencyError(std::string(what) +
                                        ": imaginary residue above tolerance");
    return z.real();
}

struct BaseScalars {
    cplx a;
    cplx big_lambda;
    cplx d1;
    double d2;
};

BaseScalars base_scalars(const OscillatorParams& p,
                         const DiffusionCoefficients& d) {
    const double big_omega = p.big_omega();
    BaseScalars s;
    s.a = cplx(p.mu, -big_omega) / p.omega;
    s.big_lambda = cplx(-p.lambda, -big_omega);
    const double m_omega = p.m * p.omega;
    s.d1 = (s.a * s.a * m_omega * d.d_qq + 2.0 * s.a * d.d_pq +
            d.d_pp / m_omega) /
           p.hbar;
    s.d2 = (m_omega * d.d_qq + 2.0 * p.mu * d.d_pq / p.omega +
            d.d_pp / m_omega) /
           p.hbar;
    return s;
}

// (1 - e^{-2 lambda t}) / lambda, with the lambda -> 0 limit 2t.
double relaxation_factor(double lambda, double t) {
    if (lambda == 0.0) return 2.0 * t;
    return -std::expm1(-2.0 * lambda * t) / lambda;
}

} // namespace

PropagatorScalars propagator_scalars(const OscillatorParams& params,
                                     const DiffusionCoefficients& d, double t) {
    if (!(t >= 0.0)) throw InputError("time must be >= 0");

    const BaseScalars base = base_scalars(params, d);
    PropagatorScalars s;
    s.a = base.a;
    s.big_lambda = base.big_lambda;
    s.d1 = base.d1;
    s.d2 = base.d2;

    const cplx e2l = std::exp(2.0 * base.big_lambda * t);
    s.g1 = (params.mu * base.a / params.omega) * e2l +
           (base.d1 / base.big_lambda) * (e2l - 1.0);
    s.g2 = std::conj(s.g1);
    s.g3 = 2.0 * (std::exp(-2.0 * params.lambda * t) +
                  base.d2 * relaxation_factor(params.lambda, t));
    s.b_w = std::norm(s.g1) - 0.25 * s.g3 * s.g3;
    return s;
}

double bw_explicit(const OscillatorParams& params,
                   const DiffusionCoefficients& d, double t) {
    if (!(t >= 0.0)) throw InputError("time must be >= 0");
    if (params.lambda <= 0.0)
        throw InputError("the expanded B_w form requires lambda > 0");

    const BaseScalars base = base_scalars(params, d);
    const double big_omega = params.big_omega();
    const double lam = params.lambda;
    const double abs_l2 = std::norm(base.big_lambda); // lambda^2 + Omega^2
    const double d1_sq = std::norm(base.d1);
    const double d2_ratio = base.d2 / lam;
    const cplx r1 = base.d1 * std::conj(base.a) / base.big_lambda;
    const double mu_w = params.mu / params.omega;

    const double coeff4 = 2.0 * mu_w * r1.real() -
                          big_omega * big_omega / (params.omega * params.omega) +
                          d1_sq / abs_l2 - d2_ratio * d2_ratio + 2.0 * d2_ratio;
    const cplx osc = (mu_w * r1 + d1_sq / abs_l2) *
                     std::exp(cplx(0.0, 2.0 * big_omega * t));
    const double coeff2 = osc.real() - d2_ratio * d2_ratio + d2_ratio;
    const double constant = d1_sq / abs_l2 - d2_ratio * d2_ratio;

    return std::exp(-4.0 * lam * t) * coeff4 -
           2.0 * std::exp(-2.0 * lam * t) * coeff2 + constant;
}

double delta_from_bw(const OscillatorParams& params, double b_w) {
    const double big_omega2 = params.omega * params.omega - params.mu * params.mu;
    return -(params.hbar * params.hbar * params.omega * params.omega /
             (4.0 * big_omega2)) *
           b_w;
}

MeanPoint mean_trajectory(const OscillatorParams& params, double q0, double p0,
                          double t) {
    if (!(t >= 0.0)) throw InputError("time must be >= 0");
    const double big_omega = params.big_omega();
    const double c = std::cos(big_omega * t);
    const double s = std::sin(big_omega * t);
    const double damp = std::exp(-params.lambda * t);

    MeanPoint mean;
    mean.mean_q = damp * ((c + params.mu / big_omega * s) * q0 +
                          s / (params.m * big_omega) * p0);
    mean.mean_p = damp * (-params.m * params.omega * params.omega / big_omega *
                              s * q0 +
                          (c - params.mu / big_omega * s) * p0);
    return mean;
}

GaussianState covariances(const OscillatorParams& params,
                          const DiffusionCoefficients& d, double t) {
    const PropagatorScalars s = propagator_scalars(params, d, t);
    const cplx a = s.a;
    const cplx a_conj = std::conj(a);

    const cplx phi_w = s.g1 * a_conj * a_conj + s.g2 * a * a - s.g3;
    const cplx psi_w = s.g1 + s.g2 - s.g3;
    const cplx chi_w = 2.0 * (s.g1 * a_conj + s.g2 * a) - s.g3 * (a + a_conj);

    // |a| = 1 exactly, so the combined terms are bounded by ~2(|g1| + |g3|).
    const double scale = 2.0 * (std::abs(s.g1) + std::abs(s.g3)) + 1e-300;

    const double big_omega2 =
        params.omega * params.omega - params.mu * params.mu;
    const double w3 = params.omega * params.omega * params.omega;

    GaussianState state;
    state.sigma_pp = -(params.hbar * params.m * w3 / (4.0 * big_omega2)) *
                     real_checked(phi_w, scale, "sigma_pp");
    state.sigma_qq = -(params.hbar * params.omega /
                       (4.0 * params.m * big_omega2)) *
                     real_checked(psi_w, scale, "sigma_qq");
    state.sigma_pq = (params.hbar * params.omega * params.omega /
                      (8.0 * big_omega2)) *
                     real_checked(chi_w, scale, "sigma_pq");

    if (!(state.sigma_qq > 0.0) || !(state.sigma_pp > 0.0))
        throw NumericalConsistencyError(
            "covariance evolution produced a non-positive variance");
    return state;
}

GaussianState evolve_state(const OscillatorParams& params,
                           const DiffusionCoefficients& d, double q0, double p0,
                           double t) {
    GaussianState state = covariances(params, d, t);
    const MeanPoint mean = mean_trajectory(params, q0, p0, t);
    state.mean_q = mean.mean_q;
    state.mean_p = mean.mean_p;
    return state;
}

AsymptoticCovariances asymptotic_covariances(const OscillatorParams& params,
                                             const DiffusionCoefficients& d) {
    if (params.lambda <= 0.0)
        throw InputError("no stationary state for lambda <= 0");

    const double m = params.m;
    const double w = params.omega;
    const double lam = params.lambda;
    const double mu = params.mu;
    const double big_omega2 = w * w - mu * mu;
    const double denom = 2.0 * lam * (lam * lam + big_omega2);
    const double m2w2 = m * m * w * w;

    AsymptoticCovariances a;
    a.sigma_qq = (m2w2 * (2.0 * lam * (lam + mu) + w * w) * d.d_qq +
                  w * w * d.d_pp + 2.0 * m * w * w * (lam + mu) * d.d_pq) /
                 (m2w2 * denom);
    a.sigma_pp = (m2w2 * w * w * d.d_qq +
                  (2.0 * lam * (lam - mu) + w * w) * d.d_pp -
                  2.0 * m * w * w * (lam - mu) * d.d_pq) /
                 denom;
    a.sigma_pq = (-m2w2 * (lam + mu) * d.d_qq + (lam - mu) * d.d_pp +
                  2.0 * m * (lam * lam - mu * mu) * d.d_pq) /
                 (m * denom);
    a.sigma = a.sigma_qq * a.sigma_pp - a.sigma_pq * a.sigma_pq;
    return a;
}

GaussianState initial_wave_packet(const OscillatorParams& params, double x10,
                                  double x20) {
    GaussianState state;
    state.mean_q = x10 * std::sqrt(2.0 * params.hbar / (params.m * params.omega));
    state.mean_p = x20 * std::sqrt(2.0 * params.hbar * params.m * params.omega);
    state.sigma_qq = params.hbar / (2.0 * params.m * params.omega);
    state.sigma_pp = params.hbar * params.m * params.omega / 2.0;
    state.sigma_pq = 0.0;
    return state;
}

double wigner_value(const GaussianState& state, double q, double p) {
    const double delta = state.delta();
    if (!(delta > 0.0)) throw InputError("invalid state: delta must be positive");

    const double dq = q - state.mean_q;
    const double dp = p - state.mean_p;
    const double quad = state.sigma_pp * dq * dq + state.sigma_qq * dp * dp -
                        2.0 * state.sigma_pq * dq * dp;
    return std::exp(-quad / (2.0 * delta)) /
           (2.0 * M_PI * std::sqrt(delta));
}

} // namespace lindblad
