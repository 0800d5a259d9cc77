#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "qsd/commands.hpp"

namespace {

int emit(const qsd::RunOutcome& outcome, const std::string& out_path) {
    if (!outcome.output.empty()) {
        if (out_path.empty()) {
            std::cout << outcome.output;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot open output file: " << out_path << "\n";
                return 1;
            }
            out << outcome.output;
        }
    }
    if (!outcome.error.empty()) {
        std::cerr << "error: " << outcome.error << "\n";
    }
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-error discrimination of pure-state ensembles via Belavkin "
                 "weighted square-root measurements"};
    app.require_subcommand(1);

    qsd::RunConfig config;
    std::string method_name = "all";
    std::string format_name = "json";
    int states = 3;

    CLI::App* discriminate =
        app.add_subcommand("discriminate", "Failure rates and certificates for an ensemble file");
    discriminate->add_option("--input", config.input_path, "Ensemble JSON file")->required();
    discriminate->add_option("--method", method_name, "Method: opt|pgm|holevo|cubic|custom|all");
    discriminate->add_option("--weights", config.weights, "Custom weights w1,w2,...")
        ->delimiter(',');

    CLI::App* counterexample = app.add_subcommand(
        "counterexample", "Three-state ensemble whose most probable state is never detected");

    CLI::App* figure =
        app.add_subcommand("figure-data", "Failure-ratio grids over (p, theta) as CSV");
    figure->add_option("--figure", config.figure, "Figure: fig1|fig2a|fig2b")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2a", "fig2b"}));
    figure->add_option("--resolution", config.resolution, "Grid points per axis (>= 2)");

    CLI::App* sweep = app.add_subcommand(
        "asymptotic-sweep", "Weighted/optimal failure ratio as theta approaches pi/2");
    sweep->add_option("--weights", config.weights, "c ratios c1,c2 with W_k = c_k p_k^2")
        ->delimiter(',')
        ->expected(1, 2)
        ->required();
    sweep->add_option("--p", config.p1, "Prior of state 1");

    CLI::App* experiment = app.add_subcommand(
        "random-experiment", "Haar-random comparison of power weightings against the optimum");
    experiment->add_option("--dim", config.dim, "Hilbert-space dimension");
    experiment->add_option("--states", states, "Number of states m");
    experiment->add_option("--priors", config.priors, "Priors p1,p2,...")
        ->delimiter(',')
        ->required();
    experiment->add_option("--trials", config.trials, "Number of random ensembles");
    experiment->add_option("--seed", config.seed, "Random seed");

    CLI::App* verify =
        app.add_subcommand("verify", "Run the certificate suite on an ensemble and weights");
    verify->add_option("--input", config.input_path, "Ensemble JSON file")->required();
    verify->add_option("--weights", config.weights, "Weights w1,w2,...")
        ->delimiter(',')
        ->required();

    std::string out_path;
    for (CLI::App* command : {discriminate, counterexample, figure, sweep, experiment, verify}) {
        command->add_option("--out", out_path, "Write output to a file instead of stdout");
        if (command != figure) {
            command->add_option("--format", format_name, "Output format: json|csv")
                ->check(CLI::IsMember({"json", "csv"}));
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 1;
    }

    if (discriminate->parsed()) {
        config.command = qsd::Command::discriminate;
    } else if (counterexample->parsed()) {
        config.command = qsd::Command::counterexample;
    } else if (figure->parsed()) {
        config.command = qsd::Command::figure_data;
        format_name = "csv";
    } else if (sweep->parsed()) {
        config.command = qsd::Command::asymptotic_sweep;
    } else if (experiment->parsed()) {
        config.command = qsd::Command::random_experiment;
    } else if (verify->parsed()) {
        config.command = qsd::Command::verify;
    }

    try {
        config.method = qsd::parse_method(method_name);
        config.format = qsd::parse_format(format_name);
        if (states < 1) {
            throw std::invalid_argument("states: must be at least 1");
        }
        config.num_states = static_cast<std::size_t>(states);
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }

    return emit(qsd::run_command(config), out_path);
}
