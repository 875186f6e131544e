#include <cmath>
#include <vector>

#include "lindblad/errors.hpp"
#include "lindblad/oracle.hpp"
#include "lindblad/propagator.hpp"

namespace lindblad {

// Tensor-product trapezoid rule over the principal axes of the covariance
// ellipse; rotating first keeps the +-n_sigma box tight even for strongly
// correlated states.
WignerQuadrature wigner_quadrature(const GaussianState& state, double n_sigma,
                                   int points_per_axis) {
    if (points_per_axis < 3) throw InputError("need at least 3 points per axis");
    const double delta = state.delta();
    if (!(delta > 0.0)) throw InputError("invalid state: delta must be positive");

    const double half_trace = 0.5 * (state.sigma_qq + state.sigma_pp);
    const double split = std::sqrt(
        0.25 * (state.sigma_qq - state.sigma_pp) *
            (state.sigma_qq - state.sigma_pp) +
        state.sigma_pq * state.sigma_pq);
    const double eig1 = half_trace + split;
    const double eig2 = half_trace - split;
    const double theta =
        0.5 * std::atan2(2.0 * state.sigma_pq, state.sigma_qq - state.sigma_pp);
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    const double span_u = n_sigma * std::sqrt(eig1);
    const double span_v = n_sigma * std::sqrt(eig2);
    const int n = points_per_axis;
    const double du = 2.0 * span_u / (n - 1);
    const double dv = 2.0 * span_v / (n - 1);

    WignerQuadrature out;
    double m_q = 0.0, m_p = 0.0, m_qq = 0.0, m_pp = 0.0, m_pq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = -span_u + du * i;
        const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        for (int j = 0; j < n; ++j) {
            const double v = -span_v + dv * j;
            const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            const double q = state.mean_q + c * u - s * v;
            const double p = state.mean_p + s * u + c * v;
            const double w = wi * wj * wigner_value(state, q, p);
            out.mass += w;
            m_q += w * q;
            m_p += w * p;
        }
    }
    const double cell = du * dv;
    out.mass *= cell;
    out.mean_q = m_q * cell / out.mass;
    out.mean_p = m_p * cell / out.mass;

    for (int i = 0; i < n; ++i) {
        const double u = -span_u + du * i;
        const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        for (int j = 0; j < n; ++j) {
            const double v = -span_v + dv * j;
            const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            const double q = state.mean_q + c * u - s * v;
            const double p = state.mean_p + s * u + c * v;
            const double w = wi * wj * wigner_value(state, q, p);
            m_qq += w * (q - out.mean_q) * (q - out.mean_q);
            m_pp += w * (p - out.mean_p) * (p - out.mean_p);
            m_pq += w * (q - out.mean_q) * (p - out.mean_p);
        }
    }
    out.sigma_qq = m_qq * cell / out.mass;
    out.sigma_pp = m_pp * cell / out.mass;
    out.sigma_pq = m_pq * cell / out.mass;
    return out;
}

} // namespace lindblad
