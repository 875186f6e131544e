#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "lindblad/errors.hpp"
#include "lindblad/oracle.hpp"

namespace lindblad {

namespace {

using cplx = std::complex<double>;

SparseC sparse_adjoint(const SparseC& m) {
    return SparseC(m.adjoint());
}

Eigen::VectorXd hermitian_eigenvalues(const FockDensityMatrix& rho) {
    if (rho.hermiticity_error() > 1e-10)
        throw InputError("matrix is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        0.5 * (rho.elements + rho.elements.adjoint()),
        Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

} // namespace

double FockDensityMatrix::hermiticity_error() const {
    return (elements - elements.adjoint()).cwiseAbs().maxCoeff();
}

SparseC fock_annihilation(int dim) {
    SparseC a(dim, dim);
    std::vector<Eigen::Triplet<cplx>> entries;
    entries.reserve(dim);
    for (int n = 1; n < dim; ++n)
        entries.emplace_back(n - 1, n, cplx(std::sqrt(double(n)), 0.0));
    a.setFromTriplets(entries.begin(), entries.end());
    return a;
}

SparseC fock_position(const OscillatorParams& params, int dim) {
    const SparseC a = fock_annihilation(dim);
    const double scale = std::sqrt(params.hbar / (2.0 * params.m * params.omega));
    return SparseC(scale * (a + sparse_adjoint(a)));
}

SparseC fock_momentum(const OscillatorParams& params, int dim) {
    const SparseC a = fock_annihilation(dim);
    const double scale = std::sqrt(params.hbar * params.m * params.omega / 2.0);
    return SparseC(cplx(0.0, scale) * (sparse_adjoint(a) - a));
}

Eigen::VectorXcd fock_coherent_vector(cplx alpha, int dim) {
    Eigen::VectorXcd c(dim);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
    return c;
}

FockLindbladIntegrator::FockLindbladIntegrator(const OscillatorParams& params,
                                               const DiffusionCoefficients& d,
                                               double x10, double x20, int dim,
                                               double dt)
    : dim_(dim > 0 ? dim : 60),
      dt_(dt > 0.0 ? dt : 1e-3 / params.omega) {
    const double hbar = params.hbar;
    const double hbar2 = hbar * hbar;

    q_ = fock_position(params, dim_);
    p_ = fock_momentum(params, dim_);
    const SparseC qp = SparseC(q_ * p_);
    const SparseC pq = SparseC(p_ * q_);
    const SparseC q2 = SparseC(q_ * q_);
    const SparseC p2 = SparseC(p_ * p_);
    const SparseC h0 = SparseC(p2 / (2.0 * params.m) +
                               0.5 * params.m * params.omega * params.omega * q2);

    // Left-multiplying part of the generator; the right part is its adjoint.
    g_ = SparseC(cplx(0.0, -1.0 / hbar) * h0 +
                 cplx(0.0, -0.5 * (params.lambda + params.mu) / hbar) * qp +
                 cplx(0.0, 0.5 * (params.lambda - params.mu) / hbar) * pq -
                 (d.d_pp / hbar2) * q2 - (d.d_qq / hbar2) * p2 +
                 (d.d_pq / hbar2) * SparseC(qp + pq));
    g_adj_ = sparse_adjoint(g_);

    c_qp_ = cplx(-2.0 * d.d_pq / hbar2, -params.lambda / hbar);
    c_pq_ = std::conj(c_qp_);
    c_qq_ = 2.0 * d.d_pp / hbar2;
    c_pp_ = 2.0 * d.d_qq / hbar2;

    // Weight strictly above level dim-10 must be negligible.
    const Eigen::VectorXcd psi = fock_coherent_vector(cplx(x10, x20), dim_);
    const double tail = psi.tail(std::min(dim_ - 1, 9)).squaredNorm();
    if (tail > 1e-10)
        throw TruncationError(
            "initial coherent state carries too much weight near the "
            "truncation boundary; increase fock_dim");
    rho_ = psi * psi.adjoint();
}

Eigen::MatrixXcd FockLindbladIntegrator::apply_generator(
    const Eigen::MatrixXcd& x) const {
    const Eigen::MatrixXcd qx = q_ * x;
    const Eigen::MatrixXcd px = p_ * x;
    Eigen::MatrixXcd out = g_ * x;
    out += x * g_adj_;
    out += c_qp_ * (qx * p_);
    out += c_pq_ * (px * q_);
    out += c_qq_ * (qx * q_);
    out += c_pp_ * (px * p_);
    return out;
}

void FockLindbladIntegrator::step(double h) {
    const Eigen::MatrixXcd k1 = apply_generator(rho_);
    const Eigen::MatrixXcd k2 = apply_generator(rho_ + (0.5 * h) * k1);
    const Eigen::MatrixXcd k3 = apply_generator(rho_ + (0.5 * h) * k2);
    const Eigen::MatrixXcd k4 = apply_generator(rho_ + h * k3);
    rho_ += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double drift = std::abs(rho_.trace().real() - 1.0) +
                         std::abs(rho_.trace().imag());
    max_trace_drift_ = std::max(max_trace_drift_, drift);
    if (drift > 1e-5)
        throw TruncationError(
            "trace drifted beyond 1e-5 during Fock integration; increase "
            "fock_dim");
}

void FockLindbladIntegrator::advance_to(double t) {
    if (t < time_ - 1e-12) throw InputError("cannot integrate backwards");
    while (t - time_ > dt_ * (1.0 + 1e-9)) {
        step(dt_);
        time_ += dt_;
    }
    const double rem = t - time_;
    if (rem > 1e-12) {
        step(rem);
        time_ = t;
    }
}

FockDensityMatrix integrate_lindblad_fock(const OscillatorParams& params,
                                          const DiffusionCoefficients& d,
                                          double x10, double x20, double t_end,
                                          double dt, int dim) {
    FockLindbladIntegrator integrator(params, d, x10, x20, dim, dt);
    integrator.advance_to(t_end);
    return integrator.density_matrix();
}

double fock_entropy(const FockDensityMatrix& rho) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(rho);
    double s = 0.0;
    for (int i = 0; i < ev.size(); ++i) {
        const double l = ev(i);
        if (l < -1e-8)
            throw InputError("negative eigenvalue: not a density matrix");
        if (l > 1e-14) s -= l * std::log(l);
    }
    return s;
}

double fock_purity(const FockDensityMatrix& rho) {
    return (rho.elements * rho.elements).trace().real();
}

GaussianState fock_observables(const OscillatorParams& params,
                               const FockDensityMatrix& rho) {
    if (rho.hermiticity_error() > 1e-10)
        throw InputError("matrix is not Hermitian within tolerance");

    const SparseC q = fock_position(params, rho.dim);
    const SparseC p = fock_momentum(params, rho.dim);
    const Eigen::MatrixXcd qr = q * rho.elements;
    const Eigen::MatrixXcd pr = p * rho.elements;

    GaussianState s;
    s.mean_q = qr.trace().real();
    s.mean_p = pr.trace().real();
    s.sigma_qq = (q * qr).trace().real() - s.mean_q * s.mean_q;
    s.sigma_pp = (p * pr).trace().real() - s.mean_p * s.mean_p;
    s.sigma_pq = 0.5 * ((q * pr).trace() + (p * qr).trace()).real() -
                 s.mean_q * s.mean_p;
    return s;
}

FockDensityMatrix fock_gibbs_matrix(const OscillatorParams& params,
                                    double temperature, int dim) {
    if (temperature <= 0.0) throw InputError("temperature must be positive");
    const double x =
        params.hbar * params.omega / (params.boltzmann * temperature);
    FockDensityMatrix rho;
    rho.dim = dim;
    rho.elements = Eigen::MatrixXcd::Zero(dim, dim);
    const double norm = -std::expm1(-x); // 1 - e^-x
    for (int n = 0; n < dim; ++n)
        rho.elements(n, n) = norm * std::exp(-x * n);
    return rho;
}

FockDensityMatrix fock_density_from_coefficients(
    const OscillatorParams& params, const GaussianState& state,
    const DensityOperatorCoefficients& coeffs, int dim) {
    if (coeffs.pure_limit)
        throw InputError(
            "pure-limit coefficients have no exponential reconstruction");

    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd dq =
        Eigen::MatrixXcd(fock_position(params, dim)) - state.mean_q * id;
    const Eigen::MatrixXcd dp =
        Eigen::MatrixXcd(fock_momentum(params, dim)) - state.mean_p * id;

    Eigen::MatrixXcd exponent = coeffs.quad_qq * dq * dq +
                                coeffs.quad_pp * dp * dp +
                                coeffs.quad_cross * (dq * dp + dp * dq);
    const double herm_err =
        (exponent - exponent.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > 1e-10 * exponent.cwiseAbs().maxCoeff())
        throw NumericalConsistencyError(
            "density-operator exponent is not Hermitian");
    exponent = 0.5 * (exponent + Eigen::MatrixXcd(exponent.adjoint()));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(exponent);
    const Eigen::VectorXd exp_ev = solver.eigenvalues().array().exp();
    FockDensityMatrix rho;
    rho.dim = dim;
    rho.elements = coeffs.normalization *
                   (solver.eigenvectors() * exp_ev.asDiagonal() *
                    solver.eigenvectors().adjoint());
    return rho;
}

} // namespace lindblad
