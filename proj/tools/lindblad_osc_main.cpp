// lindblad-osc: exact time evolution, entropy and effective temperature of the
// damped quantum harmonic oscillator, with built-in numerical cross-checks.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lindblad/commands.hpp"
#include "lindblad/config.hpp"
#include "lindblad/errors.hpp"

namespace {

struct SweepSpec {
    std::string key;
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

SweepSpec parse_sweep(const std::string& spec) {
    const auto eq = spec.find('=');
    const auto c1 = spec.find(':', eq == std::string::npos ? 0 : eq);
    const auto c2 = c1 == std::string::npos ? std::string::npos
                                            : spec.find(':', c1 + 1);
    if (eq == std::string::npos || c1 == std::string::npos ||
        c2 == std::string::npos)
        throw lindblad::ConfigError("sweep spec must look like key=a:b:n");
    SweepSpec s;
    s.key = spec.substr(0, eq);
    try {
        s.lo = std::stod(spec.substr(eq + 1, c1 - eq - 1));
        s.hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        s.count = std::stoi(spec.substr(c2 + 1));
    } catch (const std::exception&) {
        throw lindblad::ConfigError("sweep spec must look like key=a:b:n");
    }
    if (s.count < 1) throw lindblad::ConfigError("sweep count must be >= 1");
    return s;
}

std::string sweep_out_path(const std::string& path, int index) {
    char suffix[16];
    std::snprintf(suffix, sizeof(suffix), "_%03d", index);
    const auto dot = path.rfind('.');
    const auto slash = path.rfind('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

int sweep_threads() {
    if (const char* env = std::getenv("LINDBLAD_OSC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string read_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw lindblad::ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

int dispatch(const std::string& command, const std::string& config_text,
             const std::string& out_path, double wigner_t, int wigner_grid) {
    const lindblad::RunConfig config = lindblad::parse_config(config_text);

    std::ostringstream body;
    int code = 0;
    if (command == "validate") {
        code = lindblad::validate_command(config, body);
        if (!out_path.empty()) {
            std::ofstream file(out_path);
            file << lindblad::constraint_report_json(config);
        }
        std::cout << body.str();
        return code;
    }
    if (command == "oracle-check") {
        if (!config.constraints.valid()) {
            lindblad::validate_command(config, std::cout);
            return 2;
        }
        const lindblad::OracleReport report =
            lindblad::run_oracle_checks(config);
        lindblad::print_oracle_report(report, std::cout);
        if (!out_path.empty()) {
            std::ofstream file(out_path);
            file << lindblad::oracle_report_json(report);
        }
        return report.exit_code;
    }

    if (command == "evolve") code = lindblad::evolve_command(config, body);
    else if (command == "asymptote") code = lindblad::asymptote_command(config, body);
    else if (command == "wigner")
        code = lindblad::wigner_command(config, wigner_t, wigner_grid, body);

    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw lindblad::ConfigError("cannot write: " + out_path);
        file << body.str();
    }
    return code;
}

int run_sweep(const std::string& command, const std::string& config_text,
              const std::string& out_path, const SweepSpec& sweep,
              double wigner_t, int wigner_grid) {
    if (out_path.empty())
        throw lindblad::ConfigError("--sweep requires --out");

    std::vector<int> codes(sweep.count, 0);
    std::atomic<int> next{0};
    const int n_threads = std::min(sweep_threads(), sweep.count);

    auto worker = [&]() {
        for (int i = next.fetch_add(1); i < sweep.count;
             i = next.fetch_add(1)) {
            const double value =
                sweep.count == 1
                    ? sweep.lo
                    : sweep.lo + (sweep.hi - sweep.lo) * i / (sweep.count - 1);
            try {
                const std::string text =
                    lindblad::override_key(config_text, sweep.key, value);
                codes[i] = dispatch(command, text, sweep_out_path(out_path, i),
                                    wigner_t, wigner_grid);
            } catch (const lindblad::ConfigError&) {
                codes[i] = 1;
            } catch (const lindblad::ConstraintError&) {
                codes[i] = 2;
            } catch (const lindblad::InputError&) {
                codes[i] = 1;
            } catch (const lindblad::Error&) {
                codes[i] = 4;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (int code : codes)
        if (code != 0) return code;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Damped quantum harmonic oscillator under the Lindblad master "
        "equation: closed-form Gaussian evolution, von Neumann entropy, "
        "effective temperature, and independent numerical oracles.\n\n"
        "Config is flat `key = value` text (# comments). Defaults: m=1, "
        "omega=1, hbar=1, boltzmann=1, mu=0; lambda is required; give either "
        "bath_temperature or explicit d_pp/d_qq (d_pq optional). Initial "
        "wave-packet center: x10, x20 (dimensionless, default 0). Time "
        "series: t_max (required for evolve), dt_output (default t_max/100). "
        "Oracle knobs: fock_dim (60), fock_dt (1e-3/omega), ode_dt "
        "(0.01/max(lambda,omega)), check_moments/check_fock/check_fp (true)."};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string sweep_spec;
    double wigner_t = 0.0;
    int wigner_grid = 101;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file")->required();
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--sweep", sweep_spec,
                        "sweep one numeric key: key=a:b:n (requires --out)");
    };

    add_common(app.add_subcommand(
        "validate", "check the fundamental diffusion constraints"));
    add_common(app.add_subcommand(
        "evolve", "CSV time series of moments, entropy, temperature"));
    add_common(app.add_subcommand(
        "asymptote", "stationary covariances and entropy as JSON"));
    CLI::App* wigner =
        app.add_subcommand("wigner", "CSV grid of Wigner density values");
    add_common(wigner);
    wigner->add_option("--t", wigner_t, "evaluation time")->required();
    wigner->add_option("--grid", wigner_grid, "points per axis (default 101)");
    add_common(app.add_subcommand(
        "oracle-check", "run numerical oracles against the closed forms"));

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        const std::string config_text = read_file(config_path);
        if (!sweep_spec.empty())
            return run_sweep(command, config_text, out_path,
                             parse_sweep(sweep_spec), wigner_t, wigner_grid);
        return dispatch(command, config_text, out_path, wigner_t, wigner_grid);
    } catch (const lindblad::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const lindblad::ConstraintError& e) {
        std::cerr << "constraint violation: " << e.what() << '\n';
        return 2;
    } catch (const lindblad::InputError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const lindblad::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return 4;
    } catch (const lindblad::TruncationError& e) {
        std::cerr << "truncation failure: " << e.what() << '\n';
        return 4;
    } catch (const lindblad::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
