#include "tscalc/cli.hpp"

#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tscalc/io.hpp"

namespace tscalc::cli {

namespace {

constexpr double verify_tol = 1e-8;

/// `--scale`, `--problem` and `--from-coeffs` accept inline JSON or a
/// path; anything whose first non-space character is '{' is inline.
std::string load_spec(const std::string& arg, const char* what) {
    for (char c : arg) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return arg;
        break;
    }
    std::ifstream in(arg, std::ios::binary);
    if (!in) {
        throw Error(errc::parse_error,
                    std::string(what) + ": cannot read file '" + arg + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void require_arg(const std::string& arg, const char* what, const char* flag) {
    if (arg.empty()) {
        throw Error(errc::parse_error,
                    std::string(what) + ": missing (" + flag + " is required)");
    }
}

void write_output(const RunConfig& config, std::ostream& out, const std::string& text) {
    if (config.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
        throw Error(errc::parse_error,
                    "out: cannot write file '" + config.output + "'");
    }
    file << text;
}

Format resolve_format(const RunConfig& config) {
    if (!config.format_set) {
        return config.command == Command::solve ? Format::csv : Format::json;
    }
    if (config.format == Format::csv && config.command != Command::solve) {
        throw Error(errc::parse_error, "format: csv is only available for solve");
    }
    return config.format;
}

int run_solve(const RunConfig& config, std::ostream& out) {
    require_arg(config.scale_spec, "scale", "--scale");
    require_arg(config.problem_spec, "problem", "--problem");
    const TimeScalePtr ts = parse_scale_spec(load_spec(config.scale_spec, "scale"));
    const ParsedProblem pp = parse_problem_spec(load_spec(config.problem_spec, "problem"));

    Solution sol;
    if (!config.from_coeffs.empty()) {
        sol = parse_coeffs_json(load_spec(config.from_coeffs, "coeffs"));
        if (!sol.c1 || !sol.c2) {
            throw Error(errc::parse_error,
                        "coeffs: c1/c2 are required to evaluate a solution");
        }
        if (sol.xi.size() != pp.spec.gamma.size()) {
            throw Error(errc::parse_error,
                        "coeffs: xi length " + std::to_string(sol.xi.size()) +
                            " does not match gamma length " +
                            std::to_string(pp.spec.gamma.size()));
        }
        require_admissible(check_admissibility(pp.spec, ts));
    } else {
        if (!pp.y0 || !pp.yd0) {
            throw Error(errc::parse_error,
                        "problem: missing field \"ic\" (required for solve)");
        }
        sol = solve_ivp(pp.spec, ts, *pp.y0, *pp.yd0);
    }

    const SampledFunction y = evaluate_solution(sol, pp.spec, ts);
    const SampledFunction res = ts->discrete() ? residual(ts, y, pp.spec)
                                               : residual_analytic(sol, pp.spec, ts);
    const std::string text = resolve_format(config) == Format::csv
                                 ? solve_to_csv(ts, y, res)
                                 : solve_to_json(ts, y, res) + "\n";
    write_output(config, out, text);
    return 0;
}

int run_coeffs(const RunConfig& config, std::ostream& out) {
    require_arg(config.problem_spec, "problem", "--problem");
    const ParsedProblem pp = parse_problem_spec(load_spec(config.problem_spec, "problem"));
    if (!config.scale_spec.empty()) {
        const TimeScalePtr ts = parse_scale_spec(load_spec(config.scale_spec, "scale"));
        require_admissible(check_admissibility(pp.spec, ts));
    }

    // The coefficients are scale-free: lambda, xi, omega depend only on
    // (alpha, beta, gamma), and the anchor collapses the IVP to a 2x2
    // system independent of graininess.
    Solution sol;
    std::tie(sol.lambda1, sol.lambda2) = characteristic_roots(pp.spec.alpha, pp.spec.beta);
    sol.xi = xi_backward_recursion(pp.spec);
    if (pp.spec.degree() >= 2) {
        auto [w1, w2] = omega_vector(pp.spec);
        sol.omega1 = w1;
        sol.omega2 = w2;
    }
    if (pp.y0 && pp.yd0) {
        const Complex xi1 = (sol.xi.size() > 1) ? sol.xi[1] : Complex(0.0);
        const Complex r0 = *pp.y0 - sol.xi[0];
        const Complex r1 = *pp.yd0 - xi1;
        const Complex det = sol.lambda2 - sol.lambda1;
        sol.c1 = (r0 * sol.lambda2 - r1) / det;
        sol.c2 = (r1 - r0 * sol.lambda1) / det;
    }
    resolve_format(config);
    write_output(config, out, coeffs_to_json(sol) + "\n");
    return 0;
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    require_arg(config.scale_spec, "scale", "--scale");
    require_arg(config.problem_spec, "problem", "--problem");
    const TimeScalePtr ts = parse_scale_spec(load_spec(config.scale_spec, "scale"));
    const ParsedProblem pp = parse_problem_spec(load_spec(config.problem_spec, "problem"));

    const Complex y0 = pp.y0.value_or(Complex(1.0));
    const Complex yd0 = pp.yd0.value_or(Complex(0.0));
    const VerificationReport report = full_report(pp.spec, ts, y0, yd0);
    resolve_format(config);
    write_output(config, out, report_to_json(report) + "\n");
    if (report.ok(verify_tol)) return 0;
    err << "verification failed: "
        << (report.notes.empty() ? std::string("discrepancy above tolerance")
                                 : report.notes.front())
        << "\n";
    return 2;
}

int run_scale_info(const RunConfig& config, std::ostream& out) {
    require_arg(config.scale_spec, "scale", "--scale");
    const TimeScalePtr ts = parse_scale_spec(load_spec(config.scale_spec, "scale"));
    std::optional<std::pair<double, double>> alpha_beta;
    if (!config.problem_spec.empty()) {
        const ParsedProblem pp = parse_problem_spec(load_spec(config.problem_spec, "problem"));
        alpha_beta = {pp.spec.alpha, pp.spec.beta};
    }
    resolve_format(config);
    write_output(config, out, scale_info_json(ts, alpha_beta) + "\n");
    return 0;
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::solve: return run_solve(config, out);
            case Command::coeffs: return run_coeffs(config, out);
            case Command::verify: return run_verify(config, out, err);
            case Command::scale_info: return run_scale_info(config, out);
        }
        throw Error(errc::invalid_argument, "unknown command");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace tscalc::cli
