#include "scenario_config.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "qie/isotherm.hpp"

namespace qie::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    std::ostringstream os;
    os << "config line " << line << ": " << what;
    throw ConfigError(os.str());
}

double parse_number(int line, const std::string& key, const std::string& val) {
    try {
        std::size_t used = 0;
        const double v = std::stod(val, &used);
        if (used != val.size() || !std::isfinite(v))
            fail(line, "value of '" + key + "' is not a finite number: " + val);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "value of '" + key + "' is not a number: " + val);
    }
}

}  // namespace

ScenarioConfig parse_scenario_config(std::istream& in) {
    static const std::map<std::string, int> known = {
        {"omega_fb", 0}, {"omega3", 0}, {"omega4", 0}, {"beta_h", 0},
        {"a", 0},        {"q", 0},      {"tau_fb", 0}, {"tau_h", 0},
        {"beta_prime", 0}, {"mode", 0}, {"steps", 0},  {"output", 0}};

    ScenarioConfig cfg;
    std::map<std::string, int> seen;  // key -> first line
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;

        const auto eq = text.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string val = trim(text.substr(eq + 1));
        if (key.empty() || val.empty()) fail(line, "expected 'key = value'");
        if (!known.count(key)) fail(line, "unknown key '" + key + "'");
        if (seen.count(key))
            fail(line, "duplicate key '" + key + "' (first on line " +
                           std::to_string(seen[key]) + ")");
        seen[key] = line;

        if (key == "mode") {
            if (val == "analytic")
                cfg.mode = CycleMode::Analytic;
            else if (val == "numeric")
                cfg.mode = CycleMode::Numeric;
            else
                fail(line, "mode must be 'analytic' or 'numeric'");
        } else if (key == "output") {
            cfg.output = val;
        } else if (key == "steps") {
            const double v = parse_number(line, key, val);
            if (v != std::floor(v) || v < 100 || v > 1e9)
                fail(line, "steps must be an integer >= 100");
            cfg.steps = static_cast<int>(v);
        } else {
            const double v = parse_number(line, key, val);
            if (key == "omega_fb") cfg.omega_fb = v;
            else if (key == "omega3") cfg.omega3 = v;
            else if (key == "omega4") cfg.omega4 = v;
            else if (key == "beta_h") cfg.beta_h = v;
            else if (key == "a") cfg.a = v;
            else if (key == "q") cfg.q = v;
            else if (key == "tau_fb") cfg.tau_fb = v;
            else if (key == "tau_h") cfg.tau_h = v;
            else if (key == "beta_prime") cfg.beta_prime = v;
        }
    }

    for (const char* req : {"omega_fb", "omega3", "omega4", "beta_h", "a", "q",
                            "tau_fb"})
        if (!seen.count(req))
            throw ConfigError(std::string("config: missing required key '") +
                              req + "'");
    if (cfg.tau_h && cfg.beta_prime)
        throw ConfigError("config: give exactly one of tau_h, beta_prime");
    if (!cfg.tau_h && !cfg.beta_prime)
        throw ConfigError("config: one of tau_h, beta_prime is required");

    // Range validation (physics feasibility of tau_h is checked later).
    auto range = [&](bool ok, const std::string& what) {
        if (!ok) throw ConfigError("config: " + what);
    };
    range(cfg.omega_fb > 0, "omega_fb must be positive");
    range(cfg.omega4 > 0 && cfg.omega3 > cfg.omega4,
          "need omega3 > omega4 > 0");
    range(cfg.beta_h > 0, "beta_h must be positive");
    range(cfg.a > 0, "a must be positive");
    range(cfg.q > -1 && cfg.q < 0, "q must lie in (-1, 0)");
    range(cfg.tau_fb >= 0, "tau_fb must be >= 0");
    if (cfg.tau_h) range(*cfg.tau_h > 0, "tau_h must be positive");
    if (cfg.beta_prime) range(*cfg.beta_prime > 0, "beta_prime must be positive");
    return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_scenario_config(in);
}

double resolved_tau_h(const ScenarioConfig& cfg) {
    if (cfg.tau_h) return *cfg.tau_h;
    if (!(*cfg.beta_prime > cfg.beta_h))
        throw InfeasibleDurationError(
            "beta_prime must exceed beta_h for a feasible isotherm");
    return isotherm_duration_highT(
        IsothermSpec(cfg.omega3, cfg.omega4, *cfg.beta_prime), cfg.bath());
}

}  // namespace qie::cli
