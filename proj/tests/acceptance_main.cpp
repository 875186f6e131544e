// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] is the path to the lindblad-osc binary (used by the
// constraint-gate criterion).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "lindblad/oracle.hpp"
#include "lindblad/propagator.hpp"
#include "lindblad/thermo.hpp"

using namespace lindblad;

namespace {

int g_failures = 0;

void report(int index, const char* name, bool pass, double max_dev,
            double tol) {
    std::printf("%s  %2d  %-34s max_dev=%.3e  tol=%.1e\n",
                pass ? "PASS" : "FAIL", index, name, max_dev, tol);
    if (!pass) ++g_failures;
}

struct Model {
    OscillatorParams params;
    DiffusionCoefficients d;
};

const double kTemperature = 1.0 / std::log(3.0);

Model thermal_model() {
    const OscillatorParams p(1.0, 1.0, 0.2, 0.0);
    return {p, thermal_coefficients(p, kTemperature)};
}

Model random_model(std::mt19937& rng) {
    std::uniform_real_distribution<double> mass(0.5, 2.0);
    std::uniform_real_distribution<double> freq(0.5, 2.0);
    std::uniform_real_distribution<double> fric(0.05, 0.6);
    std::uniform_real_distribution<double> asym(-0.5, 0.5);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    std::uniform_real_distribution<double> diff(0.1, 0.5);
    std::uniform_real_distribution<double> cross(-0.08, 0.08);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    while (true) {
        const double omega = freq(rng);
        const OscillatorParams p(mass(rng), omega, fric(rng), asym(rng) * omega,
                                 scale(rng), scale(rng));
        DiffusionCoefficients d;
        if (coin(rng) < 0.5 && p.lambda > std::abs(p.mu)) {
            d = thermal_coefficients(p, scale(rng) * 2.0);
        } else {
            const double unit = p.hbar * std::max(p.m * omega, 1.0 / (p.m * omega));
            d = {diff(rng) * unit, diff(rng) * unit, cross(rng) * unit};
        }
        if (validate_constraints(p, d).valid()) return {p, d};
    }
}

double rel(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-15});
}

// 1. nu and S vanish at t = 0 for every valid parameter set.
void criterion_pure_start() {
    std::mt19937 rng(12345);
    double max_dev = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Model m = random_model(rng);
        const double nu =
            nu_of_delta(m.params, covariances(m.params, m.d, 0.0).delta());
        max_dev = std::max({max_dev, nu, entropy(nu)});
    }
    report(1, "pure-state start", max_dev <= 1e-12, max_dev, 1e-12);
}

// 2. nu through the covariance determinant vs nu through the expanded B_w.
void criterion_two_route_nu() {
    std::mt19937 rng(23456);
    double max_dev = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Model m = random_model(rng);
        for (int k = 1; k <= 50; ++k) {
            const double t = k * (20.0 / m.params.lambda) / 50.0;
            const double nu_delta =
                nu_of_delta(m.params, covariances(m.params, m.d, t).delta());
            const double nu_bw =
                nu_from_bw(m.params, bw_explicit(m.params, m.d, t));
            max_dev = std::max(max_dev, rel(nu_delta, nu_bw));
        }
    }
    report(2, "two-route nu", max_dev <= 1e-10, max_dev, 1e-10);
}

// 3. Closed-form covariances vs RK4 moment integration over [0, 20/lambda].
void criterion_closed_vs_moments() {
    std::mt19937 rng(34567);
    double max_dev = 0.0;
    std::vector<Model> models{thermal_model()};
    for (int i = 0; i < 7; ++i) models.push_back(random_model(rng));

    for (const Model& m : models) {
        const double t_end = 20.0 / m.params.lambda;
        const double dt = 0.002 / std::max(m.params.lambda, m.params.omega);
        const MomentTrajectory traj = integrate_moments(
            m.params, m.d, initial_wave_packet(m.params, 1.0, -0.5), t_end, dt);
        for (std::size_t k = 0; k < traj.times.size(); k += 25) {
            const GaussianState closed =
                covariances(m.params, m.d, traj.times[k]);
            const GaussianState& ode = traj.states[k];
            const double pq_scale =
                std::sqrt(closed.sigma_qq * closed.sigma_pp);
            max_dev = std::max(
                {max_dev, rel(closed.sigma_qq, ode.sigma_qq),
                 rel(closed.sigma_pp, ode.sigma_pp),
                 std::abs(closed.sigma_pq - ode.sigma_pq) / pq_scale});
        }
    }
    report(3, "closed form vs moment ODEs", max_dev <= 1e-8, max_dev, 1e-8);
}

// 4. Entropy from the Fock-basis master-equation oracle at t = 1, 5, 20.
void criterion_fock_entropy() {
    const Model m = thermal_model();
    double max_dev = 0.0;
    bool ok = true;
    try {
        FockLindbladIntegrator integrator(m.params, m.d, 1.0, 1.0, 60, 1e-3);
        for (double t : {1.0, 5.0, 20.0}) {
            integrator.advance_to(t);
            const double s_fock = fock_entropy(integrator.density_matrix());
            const double s_closed =
                entropy(nu_of_delta(m.params, covariances(m.params, m.d, t).delta()));
            max_dev = std::max(max_dev, std::abs(s_fock - s_closed));
        }
    } catch (const Error&) {
        ok = false;
    }
    report(4, "Fock oracle entropy", ok && max_dev <= 1e-5, max_dev, 1e-5);
}

// 5. Gibbs limit of the analytic evolution at t = 30/lambda.
void criterion_gibbs_limit() {
    const Model m = thermal_model();
    const double t = 30.0 / m.params.lambda;
    const GaussianState s = covariances(m.params, m.d, t);
    const double nu = nu_of_delta(m.params, s.delta());
    const double t_eff = effective_temperature(m.params, nu);

    const double max_cov_dev =
        std::max({std::abs(s.sigma_qq - 1.0), std::abs(s.sigma_pp - 1.0),
                  std::abs(s.sigma_pq)});
    const double t_dev = std::abs(t_eff - kTemperature) / kTemperature;
    report(5, "Gibbs limit (covariances)", max_cov_dev <= 1e-4, max_cov_dev,
           1e-4);
    report(5, "Gibbs limit (T_e -> T)", t_dev <= 1e-3, t_dev, 1e-3);
}

// 6. Asymptotic s equals nu(40/lambda) and the Bose occupation.
void criterion_asymptotic_nu() {
    std::mt19937 rng(45678);
    double late_dev = 0.0;
    std::vector<Model> models{thermal_model()};
    for (int i = 0; i < 3; ++i) models.push_back(random_model(rng));
    for (const Model& m : models) {
        const double s_inf = asymptotic_nu(m.params, m.d);
        const double nu_late = nu_of_delta(
            m.params, covariances(m.params, m.d, 40.0 / m.params.lambda).delta());
        late_dev = std::max(late_dev, std::abs(s_inf - nu_late));
    }
    report(6, "asymptotic s = nu(40/lambda)", late_dev <= 1e-8, late_dev, 1e-8);

    double bose_dev = 0.0;
    for (double t_scale : {0.5, 1.0, 2.0}) {
        const double temperature = t_scale / std::log(3.0);
        const OscillatorParams p(1.0, 1.0, 0.2, 0.0);
        const DiffusionCoefficients d = thermal_coefficients(p, temperature);
        const double bose = 1.0 / std::expm1(1.0 / temperature);
        bose_dev = std::max(bose_dev, rel(asymptotic_nu(p, d), bose));
    }
    report(6, "asymptotic s = Bose occupation", bose_dev <= 1e-10, bose_dev,
           1e-10);
}

// 7. Closed-form density operator vs the Lindblad-evolved matrix at t = 5.
void criterion_density_operator() {
    const Model m = thermal_model();
    const double t = 5.0;
    const GaussianState state =
        evolve_state(m.params, m.d, std::sqrt(2.0), std::sqrt(2.0), t);
    const DensityOperatorCoefficients coeffs =
        density_operator_coefficients(m.params, state);
    const FockDensityMatrix rec =
        fock_density_from_coefficients(m.params, state, coeffs, 60);

    const double trace_dev = std::abs(rec.trace_real() - 1.0);
    report(7, "density operator trace", trace_dev <= 1e-8, trace_dev, 1e-8);

    bool ok = true;
    double elem_dev = 0.0;
    try {
        const FockDensityMatrix evolved =
            integrate_lindblad_fock(m.params, m.d, 1.0, 1.0, t, 1e-3, 60);
        elem_dev = (rec.elements - evolved.elements).cwiseAbs().maxCoeff();
    } catch (const Error&) {
        ok = false;
    }
    report(7, "density operator vs Lindblad rho", ok && elem_dev <= 1e-5,
           elem_dev, 1e-5);
}

// 8. Fokker-Planck residual: second-order convergence and stationarity.
void criterion_fp_residual() {
    const Model m = thermal_model();
    FpGrid coarse;
    coarse.stencil_h = 1.0 / 32.0;
    FpGrid fine;
    fine.stencil_h = 1.0 / 64.0;
    const double ratio = fp_residual(m.params, m.d, 5.0, coarse).max_abs /
                         fp_residual(m.params, m.d, 5.0, fine).max_abs;
    report(8, "FP residual ratio 4 +- 0.5", ratio >= 3.5 && ratio <= 4.5,
           ratio, 4.5);

    FpGrid stationary;
    stationary.stencil_h = 1.0 / 512.0;
    stationary.samples_per_axis = 25;
    const double resid =
        fp_residual_stationary(m.params, m.d, stationary).max_abs;
    report(8, "FP stationary residual", resid <= 1e-6, resid, 1e-6);
}

// 9. Entropy identities: -k<ln rho> = S(nu) = S(T_e(nu)).
void criterion_entropy_identities() {
    const OscillatorParams p(1.0, 1.0, 0.2, 0.0);
    double max_dev = 0.0;
    for (double nu : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double delta = (nu + 0.5) * (nu + 0.5);
        const double via_log_rho = -expected_log_rho(p, delta);
        const double via_nu = entropy(nu);
        const double via_teff = entropy_from_effective_temperature(
            p, effective_temperature(p, nu));
        max_dev = std::max({max_dev, rel(via_log_rho, via_nu),
                            rel(via_nu, via_teff)});
    }
    report(9, "entropy identities", max_dev <= 1e-12, max_dev, 1e-12);
}

// 10. Constraint gate: thermal coefficients pass on the sufficiency grid and
// the CLI rejects violating coefficients with exit code 2.
void criterion_constraint_gate(const char* cli_path) {
    bool all_valid = true;
    for (double t : {0.1, 1.0, 10.0}) {
        for (double lam : {0.05, 0.2, 1.0}) {
            const OscillatorParams p(1.0, 1.0, lam, 0.0);
            all_valid = all_valid &&
                        validate_constraints(p, thermal_coefficients(p, t)).valid();
        }
    }
    for (double t : {1.0, 10.0}) {
        for (double mu : {-0.1, 0.1}) {
            const OscillatorParams p(1.0, 1.0, 0.2, mu);
            all_valid = all_valid &&
                        validate_constraints(p, thermal_coefficients(p, t)).valid();
        }
    }
    report(10, "thermal coefficients pass gate", all_valid,
           all_valid ? 0.0 : 1.0, 0.0);

    if (cli_path == nullptr) {
        report(10, "CLI rejects violation (exit 2)", false, 0.0, 0.0);
        return;
    }
    const std::string cfg_path =
        "/tmp/lindblad_acceptance_" + std::to_string(getpid()) + ".cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "lambda = 1.0\nd_pp = 0.1\nd_qq = 0.1\nt_max = 1\n";
    }
    const std::string cmd = std::string(cli_path) + " validate --config " +
                            cfg_path + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    const int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::remove(cfg_path.c_str());
    report(10, "CLI rejects violation (exit 2)", code == 2,
           static_cast<double>(code), 2.0);
}

} // namespace

int main(int argc, char** argv) {
    criterion_pure_start();
    criterion_two_route_nu();
    criterion_closed_vs_moments();
    criterion_fock_entropy();
    criterion_gibbs_limit();
    criterion_asymptotic_nu();
    criterion_density_operator();
    criterion_fp_residual();
    criterion_entropy_identities();
    criterion_constraint_gate(argc > 1 ? argv[1] : nullptr);

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d check(s) failed\n", g_failures);
    return 1;
}
