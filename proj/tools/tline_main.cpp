// tline: steady-state voltages and currents along a lumped transmission line.
//
//   tline <validate|simulate|train|sweep> --config <path> [--out <path>]
//         [--generations 5,10,50]

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tline/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Steady-state phasors along a damaged RLGC ladder"};
    std::string command_arg;
    std::string config_path;
    std::string out_path;
    std::vector<int> generations;

    app.add_option("command", command_arg, "validate | simulate | train | sweep")->required();
    app.add_option("--config", config_path, "run configuration file")->required();
    app.add_option("--out", out_path, "CSV output path (default: stdout)");
    app.add_option("--generations", generations, "generation counts for validate")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return tline::exit_code::config;
    }

    const auto command = tline::parse_command(command_arg);
    if (!command) {
        std::cerr << "error: unknown command '" << command_arg << "'\n";
        return tline::exit_code::config;
    }

    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot read config '" << config_path << "'\n";
        return tline::exit_code::io;
    }
    std::stringstream text;
    text << in.rdbuf();

    tline::RunConfig config;
    try {
        config = tline::parse_config(text.str());
        if (!generations.empty()) {
            for (int n : generations)
                if (n < 1) throw tline::ConfigError("--generations values must be >= 1");
            config.validate_generations = generations;
        }
    } catch (const tline::ConfigError& e) {
        std::cerr << config_path << ": " << e.what() << '\n';
        return tline::exit_code::config;
    }

    if (out_path.empty()) return tline::run(*command, config, std::cout, std::cerr);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return tline::exit_code::io;
    }
    return tline::run(*command, config, out, std::cerr);
}
