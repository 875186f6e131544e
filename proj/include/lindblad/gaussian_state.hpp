#pragma once

namespace lindblad {

/// First and second moments of the oscillator state. For the dynamics in this
/// model a Gaussian Wigner function stays Gaussian, so this is the complete
/// state at any time.
///
/// Physical states satisfy sigma_qq > 0, sigma_pp > 0 and
/// delta() >= hbar^2/4 (equality only for pure states); consumers that rely
/// on those invariants check them.
struct GaussianState {
    double mean_q = 0.0;
    double mean_p = 0.0;
    double sigma_qq = 0.0;
    double sigma_pp = 0.0;
    double sigma_pq = 0.0;

    /// Determinant of the covariance matrix.
    double delta() const { return sigma_qq * sigma_pp - sigma_pq * sigma_pq; }
};

} // namespace lindblad
