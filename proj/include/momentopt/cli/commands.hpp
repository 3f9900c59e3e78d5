#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "momentopt/cli/config.hpp"
#include "momentopt/model.hpp"

namespace momentopt::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitInfeasible = 2,
    kExitNoRoot = 3,
    kExitBadConfig = 4,
};

int exit_code_for(ErrorKind kind);

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    // true: pass iff value <= threshold; false: pass iff value >= threshold.
    bool upper = true;
    bool pass = false;
};

struct VerifyReport {
    EnergyReport energies;
    std::vector<Check> checks;
    bool pass = false;
};

/// Every residual, identity and sign check with its threshold.
VerifyReport verify_profile(const SolutionProfile& profile, const ProblemSpec& spec,
                            const RunConfig& config);

/// The commands throw Error on failure; run_cli maps errors to exit codes.
int cmd_solve(const RunConfig& config, double epsilon, const std::string& out_dir);
int cmd_ladder(const RunConfig& config, const std::string& out_dir);
int cmd_verify(const RunConfig& config, const std::string& profile_path,
               const std::string& out_dir, std::optional<double> epsilon,
               std::vector<std::string>* failing = nullptr);
int cmd_oracle(const RunConfig& config, const std::string& out_dir);

/// Entry point behind the momentopt executable. Diagnostics go to `err` as
/// one JSON object per failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace momentopt::cli
