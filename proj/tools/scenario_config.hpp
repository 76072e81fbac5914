#pragma once

// Flat "key = value" scenario files ('#' starts a comment). Required keys:
// omega_fb, omega3, omega4, beta_h, a, q, tau_fb, and exactly one of
// tau_h | beta_prime. Optional: mode (analytic|numeric), steps, output.
// Unknown or duplicate keys are rejected with their line number.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "qie/cycle.hpp"

namespace qie::cli {

/// Structural or range problem in a scenario file (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    double omega_fb = 0.0;
    double omega3 = 0.0;
    double omega4 = 0.0;
    double beta_h = 0.0;
    double a = 0.0;
    double q = 0.0;
    double tau_fb = 0.0;
    std::optional<double> tau_h;
    std::optional<double> beta_prime;
    CycleMode mode = CycleMode::Analytic;
    int steps = 400;
    std::optional<std::string> output;

    BathCoupling bath() const { return BathCoupling(a, q, beta_h); }
};

ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig load_scenario_config(const std::string& path);

/// The configured hot time, computing it from beta_prime when that form was
/// given. Throws InfeasibleDurationError when beta_prime <= beta_h.
double resolved_tau_h(const ScenarioConfig& cfg);

}  // namespace qie::cli
