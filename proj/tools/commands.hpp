#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qie/optimize.hpp"
#include "scenario_config.hpp"

namespace qie::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitIo = 4;

/// One engine cycle: header plus one CSV row
/// (dS,sigma,tau_circ,W_total,W_fb,W_wm,Q_h,Q_c,eta,P); numeric mode appends
/// energy_closure,state_closure. Output goes to the config's `output` path
/// when set, else to `out`.
int cmd_run(const std::string& config_path, std::ostream& out,
            std::ostream& err);

/// Closed-form and brute-force power optimization for the configured engine
/// (tau_h in the config is ignored).
int cmd_optimize(const std::string& config_path, std::ostream& out,
                 std::ostream& err);

struct SweepOptions {
    std::vector<double> tau_fb_over_circ{0.5, 1.0, 3.0};
    SweepGrid grid{};
    std::optional<std::string> out_path;  // overrides the config's `output`
};

/// Power-curve table, one block per feedback time.
int cmd_sweep(const std::string& config_path, const SweepOptions& options,
              std::ostream& out, std::ostream& err);

struct ValidateOptions {
    /// Name of a suite to corrupt deliberately (currently "cptp"); used to
    /// exercise the failure path.
    std::optional<std::string> inject_fault;
};

/// Runs every invariant suite, printing one PASS/FAIL line with the worst
/// observed defect each; returns kExitValidation naming the failures.
int cmd_validate(const ValidateOptions& options, std::ostream& out,
                 std::ostream& err);

}  // namespace qie::cli
