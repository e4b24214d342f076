#pragma once

#include <iosfwd>
#include <vector>

#include "config.hpp"

namespace sbcli {

/// Exact and truncated roots of one run window.
struct RootSet {
    std::vector<double> exact;
    std::vector<double> truncated;
    double mu_min = 0.0;
    double mu_max = 0.0;
};

/// Scans the configured window. With n_roots = N the window is grown from
/// the mean-gap estimate 1.1 (N + 1) pi / l until N + 1 exact roots are
/// found, then cut midway between the N-th and (N+1)-th. The truncated
/// roots are scanned only when with_truncated is set.
RootSet compute_roots(const RunConfig& config, const sb_params* params, bool with_truncated = true);

// Each command writes its files under config.out_dir, logs a short summary
// to log unless config.quiet, and returns the process exit code. Failures
// are thrown as CliError.
int cmd_roots(const RunConfig& config, std::ostream& log);
int cmd_verify(const RunConfig& config, std::ostream& log);
int cmd_modes(const RunConfig& config, std::ostream& log);
int cmd_growth(const RunConfig& config, std::ostream& log);

}  // namespace sbcli
