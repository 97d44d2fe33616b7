#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tscalc/cli.hpp"

int main(int argc, char** argv) {
    using tscalc::cli::Command;
    using tscalc::cli::Format;

    CLI::App app{"Second-order linear dynamic equations on time scales"};
    app.require_subcommand(1);

    tscalc::cli::RunConfig config;
    std::string format;

    auto add_common = [&](CLI::App* cmd, bool with_scale, bool with_problem) {
        if (with_scale) {
            cmd->add_option("--scale", config.scale_spec,
                            "Time-scale spec, inline JSON or a file path");
        }
        if (with_problem) {
            cmd->add_option("--problem", config.problem_spec,
                            "Problem spec, inline JSON or a file path");
        }
        cmd->add_option("--out", config.output, "Write the output to this file");
        cmd->add_option("--format", format, "Output format (csv or json)")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* solve = app.add_subcommand(
        "solve", "Evaluate the closed-form solution over a scale");
    add_common(solve, true, true);
    solve->add_option("--from-coeffs", config.from_coeffs,
                      "Reuse a coefficients document instead of solving");

    auto* coeffs = app.add_subcommand(
        "coeffs", "Emit characteristic roots and solution coefficients");
    add_common(coeffs, true, true);

    auto* verify = app.add_subcommand(
        "verify", "Cross-check the solution against independent oracles");
    add_common(verify, true, true);

    auto* scale_info = app.add_subcommand(
        "scale-info", "Show points, graininess and regressivity of a scale");
    add_common(scale_info, true, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (app.got_subcommand(solve)) config.command = Command::solve;
    if (app.got_subcommand(coeffs)) config.command = Command::coeffs;
    if (app.got_subcommand(verify)) config.command = Command::verify;
    if (app.got_subcommand(scale_info)) config.command = Command::scale_info;

    if (!format.empty()) {
        config.format = format == "csv" ? Format::csv : Format::json;
        config.format_set = true;
    }

    return tscalc::cli::run(config, std::cout, std::cerr);
}
