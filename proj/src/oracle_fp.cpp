#include <algorithm>
#include <cmath>
#include <functional>

#include "lindblad/errors.hpp"
#include "lindblad/oracle.hpp"
#include "lindblad/propagator.hpp"

// Residual of the phase-space Fokker-Planck equation in the dimensionless
// variables x1 = sqrt(m omega/2 hbar) q, x2 = p/sqrt(2 hbar m omega):
//   dW/dt = sum_ij A_ij d/dx_i (x_j W) + (1/2) sum_ij Q_ij d^2 W/dx_i dx_j
// with A = [[lambda-mu, -omega], [omega, lambda+mu]] and
// Q = (1/hbar) [[m omega D_qq, D_pq], [D_pq, D_pp/(m omega)]].
// The analytic Wigner solution is plugged in with second-order central
// differences; the time derivative comes from analytic re-evaluation at
// t +- dt.

namespace lindblad {

namespace {

struct XFrame {
    double q_of_x1; // q = x1 * q_of_x1
    double p_of_x2;
};

XFrame make_frame(const OscillatorParams& p) {
    return {std::sqrt(2.0 * p.hbar / (p.m * p.omega)),
            std::sqrt(2.0 * p.hbar * p.m * p.omega)};
}

using WignerFn = std::function<double(double, double)>; // (x1, x2) -> W

FpResidualReport residual_core(const OscillatorParams& params,
                               const DiffusionCoefficients& d,
                               const WignerFn& w_mid, const WignerFn* w_before,
                               const WignerFn* w_after, double dt,
                               double center_x1, double center_x2,
                               double sd_x1, double sd_x2, const FpGrid& grid) {
    const double a11 = params.lambda - params.mu;
    const double a12 = -params.omega;
    const double a21 = params.omega;
    const double a22 = params.lambda + params.mu;
    const double q11 = params.m * params.omega * d.d_qq / params.hbar;
    const double q12 = d.d_pq / params.hbar;
    const double q22 = d.d_pp / (params.m * params.omega * params.hbar);

    const double h = grid.stencil_h * std::min(sd_x1, sd_x2);
    const int n = grid.samples_per_axis;
    const double span1 = grid.half_width_sigmas * sd_x1;
    const double span2 = grid.half_width_sigmas * sd_x2;
    const double cell = (n > 1 ? 2.0 * span1 / (n - 1) : 2.0 * span1) *
                        (n > 1 ? 2.0 * span2 / (n - 1) : 2.0 * span2);

    FpResidualReport report;
    report.h = h;
    double sum_sq = 0.0;

    for (int i = 0; i < n; ++i) {
        const double x1 =
            center_x1 - span1 + (n > 1 ? 2.0 * span1 * i / (n - 1) : span1);
        for (int j = 0; j < n; ++j) {
            const double x2 =
                center_x2 - span2 + (n > 1 ? 2.0 * span2 * j / (n - 1) : span2);

            const double w00 = w_mid(x1, x2);
            const double wp0 = w_mid(x1 + h, x2);
            const double wm0 = w_mid(x1 - h, x2);
            const double w0p = w_mid(x1, x2 + h);
            const double w0m = w_mid(x1, x2 - h);
            const double wpp = w_mid(x1 + h, x2 + h);
            const double wpm = w_mid(x1 + h, x2 - h);
            const double wmp = w_mid(x1 - h, x2 + h);
            const double wmm = w_mid(x1 - h, x2 - h);

            // d/dx1 (A_1j x_j W) + d/dx2 (A_2j x_j W), central differences of
            // the flux products.
            const double drift =
                ((a11 * (x1 + h) + a12 * x2) * wp0 -
                 (a11 * (x1 - h) + a12 * x2) * wm0 +
                 (a21 * x1 + a22 * (x2 + h)) * w0p -
                 (a21 * x1 + a22 * (x2 - h)) * w0m) /
                (2.0 * h);

            const double diffusion =
                0.5 * (q11 * (wp0 - 2.0 * w00 + wm0) / (h * h) +
                       q22 * (w0p - 2.0 * w00 + w0m) / (h * h)) +
                q12 * (wpp - wpm - wmp + wmm) / (4.0 * h * h);

            double time_term = 0.0;
            if (w_before && w_after)
                time_term = ((*w_after)(x1, x2) - (*w_before)(x1, x2)) /
                            (2.0 * dt);

            const double residual = time_term - drift - diffusion;
            report.max_abs = std::max(report.max_abs, std::abs(residual));
            report.term_scale =
                std::max({report.term_scale, std::abs(time_term),
                          std::abs(drift), std::abs(diffusion)});
            sum_sq += residual * residual * cell;
        }
    }
    report.l2 = std::sqrt(sum_sq);
    return report;
}

WignerFn wigner_in_x(const OscillatorParams& params, const GaussianState& state) {
    const XFrame frame = make_frame(params);
    return [state, frame](double x1, double x2) {
        return wigner_value(state, x1 * frame.q_of_x1, x2 * frame.p_of_x2);
    };
}

} // namespace

FpResidualReport fp_residual(const OscillatorParams& params,
                             const DiffusionCoefficients& d, double t,
                             const FpGrid& grid) {
    const double dt = grid.time_delta / params.omega;
    if (!(t > dt)) throw InputError("t must exceed the time-difference step");

    const GaussianState mid = covariances(params, d, t);
    const WignerFn w_mid = wigner_in_x(params, mid);
    const WignerFn w_before = wigner_in_x(params, covariances(params, d, t - dt));
    const WignerFn w_after = wigner_in_x(params, covariances(params, d, t + dt));

    const XFrame frame = make_frame(params);
    const double sd_x1 = std::sqrt(mid.sigma_qq) / frame.q_of_x1;
    const double sd_x2 = std::sqrt(mid.sigma_pp) / frame.p_of_x2;
    return residual_core(params, d, w_mid, &w_before, &w_after, dt, 0.0, 0.0,
                         sd_x1, sd_x2, grid);
}

FpResidualReport fp_residual_stationary(const OscillatorParams& params,
                                        const DiffusionCoefficients& d,
                                        const FpGrid& grid) {
    const AsymptoticCovariances a = asymptotic_covariances(params, d);
    GaussianState state;
    state.sigma_qq = a.sigma_qq;
    state.sigma_pp = a.sigma_pp;
    state.sigma_pq = a.sigma_pq;

    const WignerFn w = wigner_in_x(params, state);
    const XFrame frame = make_frame(params);
    const double sd_x1 = std::sqrt(state.sigma_qq) / frame.q_of_x1;
    const double sd_x2 = std::sqrt(state.sigma_pp) / frame.p_of_x2;
    return residual_core(params, d, w, nullptr, nullptr, 0.0, 0.0, 0.0, sd_x1,
                         sd_x2, grid);
}

} // namespace lindblad
