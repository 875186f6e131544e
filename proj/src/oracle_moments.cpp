#include <algorithm>
#include <cmath>

#include "lindblad/errors.hpp"
#include "lindblad/oracle.hpp"

namespace lindblad {

namespace {

GaussianState axpy(const GaussianState& s, double h, const GaussianState& k) {
    GaussianState r;
    r.mean_q = s.mean_q + h * k.mean_q;
    r.mean_p = s.mean_p + h * k.mean_p;
    r.sigma_qq = s.sigma_qq + h * k.sigma_qq;
    r.sigma_pp = s.sigma_pp + h * k.sigma_pp;
    r.sigma_pq = s.sigma_pq + h * k.sigma_pq;
    return r;
}

GaussianState rk4_step(const OscillatorParams& p, const DiffusionCoefficients& d,
                       const GaussianState& s, double h) {
    const GaussianState k1 = moment_rhs(p, d, s);
    const GaussianState k2 = moment_rhs(p, d, axpy(s, 0.5 * h, k1));
    const GaussianState k3 = moment_rhs(p, d, axpy(s, 0.5 * h, k2));
    const GaussianState k4 = moment_rhs(p, d, axpy(s, h, k3));

    GaussianState r = s;
    r.mean_q += h / 6.0 * (k1.mean_q + 2.0 * k2.mean_q + 2.0 * k3.mean_q + k4.mean_q);
    r.mean_p += h / 6.0 * (k1.mean_p + 2.0 * k2.mean_p + 2.0 * k3.mean_p + k4.mean_p);
    r.sigma_qq +=
        h / 6.0 * (k1.sigma_qq + 2.0 * k2.sigma_qq + 2.0 * k3.sigma_qq + k4.sigma_qq);
    r.sigma_pp +=
        h / 6.0 * (k1.sigma_pp + 2.0 * k2.sigma_pp + 2.0 * k3.sigma_pp + k4.sigma_pp);
    r.sigma_pq +=
        h / 6.0 * (k1.sigma_pq + 2.0 * k2.sigma_pq + 2.0 * k3.sigma_pq + k4.sigma_pq);
    return r;
}

// Relative deviation between two states; sigma_pq is measured against the
// geometric variance scale since it passes through zero.
double state_deviation(const GaussianState& a, const GaussianState& b) {
    const double q_scale =
        std::max({std::abs(a.mean_q), std::abs(b.mean_q),
                  std::sqrt(std::max(a.sigma_qq, b.sigma_qq))});
    const double p_scale =
        std::max({std::abs(a.mean_p), std::abs(b.mean_p),
                  std::sqrt(std::max(a.sigma_pp, b.sigma_pp))});
    const double qq_scale = std::max(a.sigma_qq, b.sigma_qq);
    const double pp_scale = std::max(a.sigma_pp, b.sigma_pp);
    const double pq_scale = std::sqrt(qq_scale * pp_scale);
    double dev = std::abs(a.mean_q - b.mean_q) / q_scale;
    dev = std::max(dev, std::abs(a.mean_p - b.mean_p) / p_scale);
    dev = std::max(dev, std::abs(a.sigma_qq - b.sigma_qq) / qq_scale);
    dev = std::max(dev, std::abs(a.sigma_pp - b.sigma_pp) / pp_scale);
    dev = std::max(dev, std::abs(a.sigma_pq - b.sigma_pq) / pq_scale);
    return dev;
}

} // namespace

GaussianState moment_rhs(const OscillatorParams& p,
                         const DiffusionCoefficients& d,
                         const GaussianState& s) {
    const double mw2 = p.m * p.omega * p.omega;
    GaussianState r;
    r.mean_q = -(p.lambda - p.mu) * s.mean_q + s.mean_p / p.m;
    r.mean_p = -mw2 * s.mean_q - (p.lambda + p.mu) * s.mean_p;
    r.sigma_qq = -2.0 * (p.lambda - p.mu) * s.sigma_qq +
                 2.0 * s.sigma_pq / p.m + 2.0 * d.d_qq;
    r.sigma_pp = -2.0 * (p.lambda + p.mu) * s.sigma_pp -
                 2.0 * mw2 * s.sigma_pq + 2.0 * d.d_pp;
    r.sigma_pq = -2.0 * p.lambda * s.sigma_pq + s.sigma_pp / p.m -
                 mw2 * s.sigma_qq + 2.0 * d.d_pq;
    return r;
}

MomentTrajectory integrate_moments(const OscillatorParams& params,
                                   const DiffusionCoefficients& d,
                                   const GaussianState& state0, double t_end,
                                   double dt) {
    if (!(t_end >= 0.0)) throw InputError("t_end must be >= 0");
    if (dt <= 0.0) dt = 0.01 / std::max(params.lambda, params.omega);

    const long n_steps = std::max<long>(1, std::lround(t_end / dt));
    const double h = t_end / static_cast<double>(n_steps);

    MomentTrajectory traj;
    traj.times.reserve(n_steps + 1);
    traj.states.reserve(n_steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(state0);
    traj.min_delta = state0.delta();

    GaussianState coarse = state0;
    GaussianState fine = state0;
    for (long i = 0; i < n_steps; ++i) {
        coarse = rk4_step(params, d, coarse, h);
        fine = rk4_step(params, d, rk4_step(params, d, fine, 0.5 * h), 0.5 * h);
        traj.convergence_error =
            std::max(traj.convergence_error, state_deviation(coarse, fine));
        traj.times.push_back(static_cast<double>(i + 1) * h);
        traj.states.push_back(fine);
        traj.min_delta = std::min(traj.min_delta, fine.delta());
    }

    if (traj.convergence_error > 1e-6)
        throw ConvergenceError(
            "moment integration failed step-halving validation; decrease dt");
    return traj;
}

} // namespace lindblad
