#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lindblad/propagator.hpp"
#include "lindblad/thermo.hpp"

using namespace lindblad;

namespace {

const OscillatorParams kNatural(1.0, 1.0, 0.2, 0.0);

// S/k for nu = 1/2 equals ln(3/2) + ln(3)/2 (geometric eigenvalue sum).
const double kEntropyHalf = std::log(1.5) + 0.5 * std::log(3.0);

} // namespace

TEST_CASE("nu from delta") {
    CHECK(nu_of_delta(kNatural, 0.25) == 0.0);
    CHECK(nu_of_delta(kNatural, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    // tiny dips below the bound clamp to the pure state, real dips throw
    CHECK(nu_of_delta(kNatural, 0.25 * (1.0 - 1e-13)) == 0.0);
    CHECK_THROWS_AS(nu_of_delta(kNatural, 0.25 * (1.0 - 1e-10)), InputError);
    CHECK_THROWS_AS(nu_of_delta(kNatural, std::nan("")), InputError);

    // hbar dependence: delta = hbar^2 (nu + 1/2)^2
    const OscillatorParams scaled(1.0, 1.0, 0.2, 0.0, 1.7);
    const double delta = 1.7 * 1.7 * 1.21;
    CHECK(nu_of_delta(scaled, delta) == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("nu from B_w and the sign guard") {
    // B_w(0) = -Omega^2/omega^2 gives nu = 0.
    const OscillatorParams p(1.0, 1.0, 0.3, 0.25);
    const double big_om2 = 1.0 - 0.25 * 0.25;
    CHECK(std::abs(nu_from_bw(p, -big_om2)) < 1e-15);
    CHECK_THROWS_AS(nu_from_bw(p, 0.0), NumericalConsistencyError);
    CHECK_THROWS_AS(nu_from_bw(p, 0.5), NumericalConsistencyError);
}

TEST_CASE("two-route nu along trajectories") {
    std::mt19937 rng(200);
    std::uniform_real_distribution<double> fric(0.1, 0.5);
    std::uniform_real_distribution<double> asym(-0.4, 0.4);
    std::uniform_real_distribution<double> diff(0.15, 0.5);
    for (int i = 0; i < 10; ++i) {
        OscillatorParams p(1.0, 1.0, fric(rng), asym(rng));
        DiffusionCoefficients d{diff(rng), diff(rng), 0.0};
        if (!validate_constraints(p, d).valid()) continue;
        for (int k = 1; k <= 10; ++k) {
            const double t = k * 2.0;
            const double nu_delta =
                nu_of_delta(p, covariances(p, d, t).delta());
            const double nu_bw = nu_from_bw(p, bw_explicit(p, d, t));
            CHECK(nu_delta == doctest::Approx(nu_bw).epsilon(1e-10));
        }
    }
}

TEST_CASE("entropy values") {
    CHECK(entropy(0.0) == 0.0);
    CHECK(entropy(1.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(entropy(0.5) == doctest::Approx(kEntropyHalf).epsilon(1e-14));
    CHECK(kEntropyHalf == doctest::Approx(0.9547712524422192).epsilon(1e-15));
    CHECK_THROWS_AS(entropy(-0.1), InputError);
}

TEST_CASE("entropy series branch joins the direct formula") {
    for (double nu : {5e-10, 9e-10, 1.1e-9, 2e-9, 1e-8}) {
        const long double nl = nu;
        const long double direct =
            (nl + 1.0L) * std::log(nl + 1.0L) - nl * std::log(nl);
        CHECK(entropy(nu) ==
              doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));
    }
}

TEST_CASE("entropy and effective temperature increase with nu") {
    double prev_s = entropy(1e-6);
    double prev_t = effective_temperature(kNatural, 1e-6);
    for (double nu : {1e-4, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
        const double s = entropy(nu);
        const double t = effective_temperature(kNatural, nu);
        CHECK(s > prev_s);
        CHECK(t > prev_t);
        prev_s = s;
        prev_t = t;
    }
}

TEST_CASE("effective temperature") {
    CHECK(effective_temperature(kNatural, 0.0) == 0.0);
    // nu = 1/2 recovers the bath temperature of the coth = 2 thermal set
    CHECK(effective_temperature(kNatural, 0.5) ==
          doctest::Approx(1.0 / std::log(3.0)).epsilon(1e-15));
    CHECK(1.0 / std::log(3.0) ==
          doctest::Approx(0.9102392266268373).epsilon(1e-15));

    // dimensional scaling
    const OscillatorParams scaled(1.0, 2.0, 0.2, 0.0, 3.0, 0.5);
    CHECK(effective_temperature(scaled, 0.5) ==
          doctest::Approx(6.0 / (0.5 * std::log(3.0))).epsilon(1e-14));
}

TEST_CASE("entropy through the effective temperature is an identity") {
    for (double nu : {0.1, 0.5, 1.0, 3.0}) {
        const double t_eff = effective_temperature(kNatural, nu);
        CHECK(entropy_from_effective_temperature(kNatural, t_eff) ==
              doctest::Approx(entropy(nu)).epsilon(1e-12));
    }
    CHECK(entropy_from_effective_temperature(kNatural, 0.0) == 0.0);
}

TEST_CASE("purity") {
    CHECK(purity_of_nu(0.0) == 1.0);
    CHECK(purity_of_nu(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(purity_of_nu(2.0) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("asymptotic nu for the thermal set and generic late times") {
    const double temperature = 1.0 / std::log(3.0);
    const DiffusionCoefficients d = thermal_coefficients(kNatural, temperature);
    CHECK(asymptotic_nu(kNatural, d) == doctest::Approx(0.5).epsilon(1e-13));

    // equals nu at t = 40/lambda
    const double nu_late =
        nu_of_delta(kNatural, covariances(kNatural, d, 200.0).delta());
    CHECK(asymptotic_nu(kNatural, d) ==
          doctest::Approx(nu_late).epsilon(1e-8));
}

TEST_CASE("asymptotic nu equals the Bose occupation in thermal mode") {
    std::mt19937 rng(201);
    std::uniform_real_distribution<double> asym(-0.15, 0.15);
    for (double t_scale : {0.5, 1.0, 2.0}) {
        const double temperature = t_scale / std::log(3.0);
        for (int i = 0; i < 4; ++i) {
            const OscillatorParams p(1.0, 1.0, 0.3, asym(rng));
            const DiffusionCoefficients d = thermal_coefficients(p, temperature);
            const double bose =
                1.0 / std::expm1(p.hbar * p.omega /
                                 (p.boltzmann * temperature));
            CHECK(asymptotic_nu(p, d) == doctest::Approx(bose).epsilon(1e-12));
        }
    }
}

TEST_CASE("asymptotic nu rejects constraint-violating coefficients") {
    const OscillatorParams p(1.0, 1.0, 1.0, 0.0);
    const DiffusionCoefficients d{0.1, 0.1, 0.3};
    REQUIRE_FALSE(validate_constraints(p, d).valid());
    CHECK_THROWS_AS(asymptotic_nu(p, d), ConstraintError);
}

TEST_CASE("expected log rho") {
    // delta = 1, hbar = 1: -(1/2) ln(3/4) - ln 3, which is -S/k at nu = 1/2.
    const double expected = -0.5 * std::log(0.75) - std::log(3.0);
    CHECK(expected_log_rho(kNatural, 1.0) ==
          doctest::Approx(expected).epsilon(1e-15));
    CHECK(-expected == doctest::Approx(kEntropyHalf).epsilon(1e-15));

    for (double delta : {0.3, 1.0, 5.0}) {
        CHECK(-expected_log_rho(kNatural, delta) ==
              doctest::Approx(entropy(nu_of_delta(kNatural, delta)))
                  .epsilon(1e-12));
    }
    CHECK(expected_log_rho(kNatural, 0.25) ==
          -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(expected_log_rho(kNatural, 0.2), InputError);
}

TEST_CASE("density operator coefficients reproduce the Gibbs exponent") {
    // coth = 2 thermal state: sigma_qq = sigma_pp = 1, sigma_pq = 0.
    GaussianState state;
    state.sigma_qq = 1.0;
    state.sigma_pp = 1.0;
    state.sigma_pq = 0.0;
    const DensityOperatorCoefficients c =
        density_operator_coefficients(kNatural, state);
    CHECK_FALSE(c.pure_limit);
    CHECK(c.kappa > 0.0);
    const double temperature = 1.0 / std::log(3.0);
    // exponent must be -(p^2/2m + m omega^2 q^2/2)/kT
    CHECK(c.quad_qq == doctest::Approx(-0.5 / temperature).epsilon(1e-14));
    CHECK(c.quad_pp == doctest::Approx(-0.5 / temperature).epsilon(1e-14));
    CHECK(c.quad_cross == 0.0);
    CHECK(c.quad_pp / c.quad_qq == doctest::Approx(1.0).epsilon(1e-14));
    // prefactor equals 2 sinh(hbar omega / 2kT)
    CHECK(c.normalization ==
          doctest::Approx(2.0 * std::sinh(0.5 * std::log(3.0)))
              .epsilon(1e-14));
}

TEST_CASE("density operator coefficient ratio scales as 1/(m omega)^2") {
    const OscillatorParams p(2.0, 0.5, 0.2, 0.0);
    const double coth = 1.0 / std::tanh(0.25 / 0.8);
    GaussianState state;
    state.sigma_qq = p.hbar / (2.0 * p.m * p.omega) * coth;
    state.sigma_pp = p.hbar * p.m * p.omega / 2.0 * coth;
    state.sigma_pq = 0.0;
    const DensityOperatorCoefficients c =
        density_operator_coefficients(p, state);
    CHECK(c.quad_pp / c.quad_qq ==
          doctest::Approx(1.0 / (p.m * p.m * p.omega * p.omega))
              .epsilon(1e-13));
}

TEST_CASE("density operator coefficients flag the pure limit") {
    GaussianState pure;
    pure.sigma_qq = 0.5;
    pure.sigma_pp = 0.5;
    pure.sigma_pq = 0.0;
    const DensityOperatorCoefficients c =
        density_operator_coefficients(kNatural, pure);
    CHECK(c.pure_limit);
    CHECK_THROWS_AS(density_operator_coefficients(
                        kNatural, GaussianState{0.0, 0.0, 0.4, 0.4, 0.0}),
                    InputError);
}

TEST_CASE("thermo report at the pure start") {
    const GaussianState packet = initial_wave_packet(kNatural, 1.0, 1.0);
    const ThermoReport r = thermo_report(kNatural, 0.0, packet);
    CHECK(r.nu == 0.0);
    CHECK(r.entropy == 0.0);
    CHECK(r.t_eff == 0.0);
    CHECK(r.purity == 1.0);
    CHECK(r.delta == doctest::Approx(0.25).epsilon(1e-14));
}
