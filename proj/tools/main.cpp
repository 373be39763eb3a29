#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ptspeed/cli.hpp"

namespace {

/* Attaches the model/grid/output flags shared by the physics subcommands. */
void add_common_options(CLI::App* cmd, ptspeed::cli::RunConfig& config) {
    cmd->add_option("--model", config.model_name, "builtin model family: pt | dephasing");
    cmd->add_option("--model-file", config.model_file, "path to a model JSON file");
    cmd->add_option("--g", config.g, "coherent drive strength");
    cmd->add_option("--gamma", config.gamma, "damping rate");
    cmd->add_option("--t-max", config.t_max, "propagation horizon");
    cmd->add_option("--dt", config.dt, "grid step (default 1e-3 / max(g, gamma))");
    cmd->add_option("--init", config.init, "initial state: up_z | down_z | plus_x | x,y,z");
    cmd->add_option("--format", config.format, "output format: csv | json");
    cmd->add_option("--out", config.out_path, "output path (default stdout)");
    cmd->add_option("--seed", config.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
    ptspeed::cli::RunConfig config;

    CLI::App app{"open-system speed tables, phase classification, and trajectory sampling"};
    app.require_subcommand(1);

    CLI::App* simulate = app.add_subcommand("simulate", "propagate and tabulate speed observables");
    add_common_options(simulate, config);

    CLI::App* classify = app.add_subcommand("classify", "spectral phase of the flow generator");
    add_common_options(classify, config);

    CLI::App* sweep = app.add_subcommand("sweep", "classify over a (g, gamma) grid");
    add_common_options(sweep, config);
    sweep->add_option("--g-grid", config.g_grid, "comma-separated g values")->delimiter(',');
    sweep->add_option("--gamma-grid", config.gamma_grid, "comma-separated gamma values")
        ->delimiter(',');

    CLI::App* unravel = app.add_subcommand("unravel", "jump-trajectory ensemble average");
    add_common_options(unravel, config);
    unravel->add_option("--n-traj", config.n_traj, "trajectories to average (>= 100)");

    CLI::App* figure1 = app.add_subcommand("figure1", "speed tables across the three phases");
    add_common_options(figure1, config);

    CLI::App* verify = app.add_subcommand("verify", "run the cross-module property suite");
    verify->add_option("--cases", config.cases, "random cases per property");
    verify->add_option("--seed", config.seed, "suite seed");
    verify->add_option("--out", config.out_path, "report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    if (figure1->parsed() && figure1->count("--t-max") == 0) {
        config.t_max = 12.0;  // room for the late-time phase comparison
    }
    config.command = app.get_subcommands().front()->get_name();
    return ptspeed::cli::run(config, std::cout, std::cerr);
}
