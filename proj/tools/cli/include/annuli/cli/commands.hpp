#pragma once

#include "annuli/cli/config.hpp"
#include "annuli/cli/output.hpp"

#include <ostream>

namespace annuli::cli {

struct CommandResult {
    Document doc;
    /// 0 on success; 1 when a verify check failed.
    int exit_code = 0;
    /// One-line summary for standard error; never part of the report.
    std::string summary;
};

/// analytic, h1_numeric, h2_numeric, delta (largest refinement change).
CommandResult cmd_energy(const RunConfig& cfg);
/// Profile table t, H_discrete, H_closed_form, abs_error, el_residual and a
/// summary block energy, analytic, gap.
CommandResult cmd_minimize(const RunConfig& cfg);
/// ratio, threshold, margin, admissible, radial harmonic energy (empty when
/// not admissible) and the weighted lower bound.
CommandResult cmd_nitsche(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);
/// One record per grid point, first axis outermost.
CommandResult cmd_sweep(const RunConfig& cfg);

CommandResult run_command(const RunConfig& cfg);

/// Full program: parse, run, write. Returns the process exit status
/// (0 ok, 1 computation or check failure, 2 usage error).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace annuli::cli
