#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "commands.hpp"

namespace {

qie::SweepGrid parse_grid(const std::string& text) {
    qie::SweepGrid grid;
    double lo = 0, hi = 0;
    long n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' ||
        !is.eof() || n < 2)
        throw CLI::ValidationError("--grid", "expected lo:hi:n with n >= 2");
    grid.lo = lo;
    grid.hi = hi;
    grid.points = static_cast<int>(n);
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-time measurement-feedback qubit engine toolkit"};
    app.require_subcommand(1);

    std::string run_cfg, opt_cfg, sweep_cfg, grid_text, fault, sweep_out;
    qie::cli::SweepOptions sweep_options;
    qie::cli::ValidateOptions validate_options;

    auto* validate =
        app.add_subcommand("validate", "run the full invariant suite");
    validate->add_option("--inject-fault", fault,
                         "deliberately corrupt a suite (supported: cptp)");

    auto* run = app.add_subcommand("run", "evaluate one engine cycle");
    run->add_option("config", run_cfg, "scenario file (key = value)")
        ->required();

    auto* optimize =
        app.add_subcommand("optimize", "maximize power over the hot time");
    optimize->add_option("config", opt_cfg, "scenario file (key = value)")
        ->required();

    auto* sweep = app.add_subcommand("sweep", "tabulate power curves as CSV");
    sweep->add_option("config", sweep_cfg, "scenario file (key = value)")
        ->required();
    sweep
        ->add_option("--tau-fb-list", sweep_options.tau_fb_over_circ,
                     "feedback times in units of the dissipation time")
        ->delimiter(',');
    sweep->add_option("--grid", grid_text,
                      "tau_h grid lo:hi:n in units of the dissipation time");
    sweep->add_option("--out", sweep_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) {
        if (!fault.empty()) validate_options.inject_fault = fault;
        return qie::cli::cmd_validate(validate_options, std::cout, std::cerr);
    }
    if (run->parsed())
        return qie::cli::cmd_run(run_cfg, std::cout, std::cerr);
    if (optimize->parsed())
        return qie::cli::cmd_optimize(opt_cfg, std::cout, std::cerr);
    if (sweep->parsed()) {
        if (!grid_text.empty()) {
            try {
                sweep_options.grid = parse_grid(grid_text);
            } catch (const CLI::ValidationError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return qie::cli::kExitConfig;
            }
        }
        if (sweep->count("--out")) sweep_options.out_path = sweep_out;
        return qie::cli::cmd_sweep(sweep_cfg, sweep_options, std::cout,
                                   std::cerr);
    }
    return qie::cli::kExitOk;
}
