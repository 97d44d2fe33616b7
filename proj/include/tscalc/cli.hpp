#pragma once

#include <iosfwd>
#include <string>

namespace tscalc::cli {

enum class Command { solve, coeffs, verify, scale_info };
enum class Format { csv, json };

/// One CLI invocation. scale_spec / problem_spec / from_coeffs accept a
/// file path or inline JSON (detected by a leading '{').
struct RunConfig {
    Command command = Command::solve;
    std::string scale_spec;
    std::string problem_spec;
    std::string from_coeffs;   // solve only: reuse a coeffs document
    std::string output;        // empty = standard output
    Format format = Format::csv;
    bool format_set = false;   // defaults depend on the command
};

/// Exit status: 0 success, 1 input error (single-line diagnostic on
/// `err`), 2 verification failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace tscalc::cli
