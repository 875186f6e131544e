#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lindblad/config.hpp"

// Subcommand implementations. Each takes a parsed config, writes its output to
// a stream, and returns the process exit code:
//   0 ok, 1 config error, 2 constraint violation, 3 oracle FAIL,
//   4 convergence/truncation trouble.

namespace lindblad {

/// Print the fundamental-constraint report (one line per inequality plus an
/// overall verdict).
int validate_command(const RunConfig& config, std::ostream& out);

/// Time series CSV with header
///   t,mean_q,mean_p,sigma_qq,sigma_pp,sigma_pq,delta,nu,entropy,t_eff,purity
/// one row per output step, every float as 17-significant-digit decimal.
/// Byte output is deterministic for a fixed config.
int evolve_command(const RunConfig& config, std::ostream& out);

/// Stationary covariances, asymptotic nu and entropy, effective temperature
/// and purity at t = infinity, as JSON.
int asymptote_command(const RunConfig& config, std::ostream& out);

/// CSV grid (q,p,w) of Wigner values at time t, grid_n points per axis over
/// +-5 standard deviations around the mean.
int wigner_command(const RunConfig& config, double t, int grid_n,
                   std::ostream& out);

/// Status of one oracle check.
struct OracleCheck {
    std::string name;
    std::string status; // PASS / FAIL / TRUNCATION / NO_CONVERGENCE / SKIPPED
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct OracleReport {
    std::vector<OracleCheck> checks;
    int exit_code = 0;
};

/// Run the enabled oracle checks against the closed-form results for this
/// config; prints one line per check. Truncation/convergence breakdowns are
/// separate statuses, not FAILs.
OracleReport run_oracle_checks(const RunConfig& config);
void print_oracle_report(const OracleReport& report, std::ostream& out);
int oracle_check_command(const RunConfig& config, std::ostream& out);

/// Machine-readable variants (JSON text).
std::string oracle_report_json(const OracleReport& report);
std::string constraint_report_json(const RunConfig& config);

} // namespace lindblad
