#include "tscalc/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace tscalc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& ctx, const std::string& message) {
    throw Error(errc::parse_error, ctx + ": " + message);
}

json parse_json(const std::string& text, const char* ctx) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ctx, "invalid JSON");
    if (!j.is_object()) fail(ctx, "expected a JSON object");
    return j;
}

const json& require_field(const json& j, const char* ctx, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) fail(ctx, std::string("missing field \"") + name + "\"");
    return *it;
}

double require_number(const json& j, const char* ctx, const char* name) {
    const json& v = require_field(j, ctx, name);
    if (!v.is_number()) fail(ctx, std::string("field \"") + name + "\" must be a number");
    return v.get<double>();
}

std::size_t require_count(const json& j, const char* ctx, const char* name) {
    const json& v = require_field(j, ctx, name);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        fail(ctx, std::string("field \"") + name + "\" must be an integer");
    }
    const long long n = v.get<long long>();
    if (n < 3) fail(ctx, std::string("field \"") + name + "\" must be >= 3");
    return static_cast<std::size_t>(n);
}

Complex read_complex(const json& v, const char* ctx, const char* name) {
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return Complex(v[0].get<double>(), v[1].get<double>());
    }
    fail(ctx, std::string("field \"") + name + "\" must be a number or an [re, im] pair");
}

std::string complex_str(Complex z) {
    return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

std::string optional_complex_str(const std::optional<Complex>& z) {
    return z ? complex_str(*z) : "null";
}

std::string optional_double_str(const std::optional<double>& v) {
    return (v && std::isfinite(*v)) ? format_double(*v) : "null";
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

TimeScalePtr parse_scale_spec(const std::string& json_text) {
    const char* ctx = "scale";
    const json j = parse_json(json_text, ctx);
    const json& kind = require_field(j, ctx, "kind");
    if (!kind.is_string()) fail(ctx, "field \"kind\" must be a string");
    const std::string k = kind.get<std::string>();

    if (k == "grid") {
        const json& pts = require_field(j, ctx, "points");
        if (!pts.is_array() || pts.size() < 3) {
            fail(ctx, "field \"points\" must be an array of at least 3 numbers");
        }
        std::vector<double> values;
        values.reserve(pts.size());
        for (const auto& p : pts) {
            if (!p.is_number()) fail(ctx, "field \"points\" must contain only numbers");
            values.push_back(p.get<double>());
        }
        return TimeScale::grid(std::move(values));
    }
    if (k == "uniform") {
        return TimeScale::uniform(require_number(j, ctx, "start"),
                                  require_number(j, ctx, "step"),
                                  require_count(j, ctx, "count"));
    }
    if (k == "q_scale") {
        return TimeScale::q_scale(require_number(j, ctx, "q"),
                                  require_number(j, ctx, "first"),
                                  require_count(j, ctx, "count"));
    }
    if (k == "real_interval") {
        return TimeScale::real_interval(require_number(j, ctx, "a"),
                                        require_number(j, ctx, "b"),
                                        require_count(j, ctx, "samples"));
    }
    fail(ctx, "field \"kind\" must be one of grid|uniform|q_scale|real_interval");
}

ParsedProblem parse_problem_spec(const std::string& json_text) {
    const char* ctx = "problem";
    const json j = parse_json(json_text, ctx);

    ParsedProblem out;
    out.spec.alpha = require_number(j, ctx, "alpha");
    out.spec.beta = require_number(j, ctx, "beta");
    out.spec.anchor = require_number(j, ctx, "anchor");

    const json& gamma = require_field(j, ctx, "gamma");
    if (!gamma.is_array() || gamma.empty()) {
        fail(ctx, "field \"gamma\" must be a nonempty array of numbers");
    }
    for (const auto& g : gamma) {
        if (!g.is_number()) fail(ctx, "field \"gamma\" must contain only numbers");
        out.spec.gamma.push_back(g.get<double>());
    }

    if (auto ic = j.find("ic"); ic != j.end()) {
        if (!ic->is_object()) fail(ctx, "field \"ic\" must be an object");
        out.y0 = read_complex(require_field(*ic, ctx, "y"), ctx, "ic.y");
        out.yd0 = read_complex(require_field(*ic, ctx, "yd"), ctx, "ic.yd");
    }
    return out;
}

std::string coeffs_to_json(const Solution& sol) {
    std::ostringstream os;
    os << "{\"lambda1\":" << complex_str(sol.lambda1)
       << ",\"lambda2\":" << complex_str(sol.lambda2) << ",\"xi\":[";
    for (std::size_t i = 0; i < sol.xi.size(); ++i) {
        if (i) os << ",";
        os << complex_str(sol.xi[i]);
    }
    os << "],\"omega1\":" << optional_complex_str(sol.omega1)
       << ",\"omega2\":" << optional_complex_str(sol.omega2)
       << ",\"c1\":" << optional_complex_str(sol.c1)
       << ",\"c2\":" << optional_complex_str(sol.c2) << "}";
    return os.str();
}

Solution parse_coeffs_json(const std::string& json_text) {
    const char* ctx = "coeffs";
    const json j = parse_json(json_text, ctx);

    Solution sol;
    sol.lambda1 = read_complex(require_field(j, ctx, "lambda1"), ctx, "lambda1");
    sol.lambda2 = read_complex(require_field(j, ctx, "lambda2"), ctx, "lambda2");
    const json& xi = require_field(j, ctx, "xi");
    if (!xi.is_array() || xi.empty()) fail(ctx, "field \"xi\" must be a nonempty array");
    for (std::size_t i = 0; i < xi.size(); ++i) {
        sol.xi.push_back(read_complex(xi[i], ctx, "xi"));
    }
    auto opt = [&](const char* name) -> std::optional<Complex> {
        auto it = j.find(name);
        if (it == j.end() || it->is_null()) return std::nullopt;
        return read_complex(*it, ctx, name);
    };
    sol.omega1 = opt("omega1");
    sol.omega2 = opt("omega2");
    sol.c1 = opt("c1");
    sol.c2 = opt("c2");
    return sol;
}

std::string report_to_json(const VerificationReport& report) {
    const AdmissibilityReport& adm = report.admissibility;
    std::ostringstream os;
    os << "{\"residual_max\":" << optional_double_str(report.residual_max)
       << ",\"xi_discrepancy_max\":" << optional_double_str(report.xi_discrepancy_max)
       << ",\"step_oracle_discrepancy_max\":"
       << optional_double_str(report.step_oracle_discrepancy_max)
       << ",\"wronskian_discrepancy_max\":"
       << optional_double_str(report.wronskian_discrepancy_max)
       << ",\"wronskian_min_abs\":" << optional_double_str(report.wronskian_min_abs)
       << ",\"admissibility\":{"
       << "\"beta_nonzero\":" << bool_str(adm.beta_nonzero)
       << ",\"beta_ne_alpha_sq\":" << bool_str(adm.beta_ne_alpha_sq)
       << ",\"regressive\":" << bool_str(adm.regressive)
       << ",\"first_non_regressive_index\":";
    if (adm.first_non_regressive_index) {
        os << *adm.first_non_regressive_index;
    } else {
        os << "null";
    }
    os << ",\"regressivity_min_abs\":" << format_double(adm.regressivity_min_abs)
       << ",\"factorization_max_rel\":" << optional_double_str(adm.factorization_max_rel)
       << ",\"factorization_agree\":" << bool_str(adm.factorization_agree)
       << ",\"passed\":" << bool_str(adm.passed()) << "},\"notes\":[";
    for (std::size_t i = 0; i < report.notes.size(); ++i) {
        if (i) os << ",";
        os << "\"" << json_escape(report.notes[i]) << "\"";
    }
    os << "]}";
    return os.str();
}

std::string scale_info_json(const TimeScalePtr& ts,
                            const std::optional<std::pair<double, double>>& alpha_beta) {
    std::ostringstream os;
    os << "{\"kind\":\"" << scale_kind_name(ts->kind()) << "\",\"points\":[";
    for (std::size_t i = 0; i < ts->size(); ++i) {
        if (i) os << ",";
        os << format_double(ts->point(i));
    }
    os << "],\"mu\":[";
    for (std::size_t i = 0; i + 1 < ts->size(); ++i) {
        if (i) os << ",";
        os << format_double(ts->discrete() ? ts->graininess(i) : 0.0);
    }
    os << "],\"regressivity\":";
    if (alpha_beta) {
        const auto [alpha, beta] = *alpha_beta;
        os << "[";
        for (std::size_t i = 0; i + 1 < ts->size(); ++i) {
            const double mu = ts->discrete() ? ts->graininess(i) : 0.0;
            if (i) os << ",";
            os << format_double(1.0 - 2.0 * alpha * mu + beta * mu * mu);
        }
        os << "]";
    } else {
        os << "null";
    }
    os << "}";
    return os.str();
}

std::string solve_to_csv(const TimeScalePtr& ts, const SampledFunction& y,
                         const SampledFunction& res) {
    std::ostringstream os;
    os << "t,y_re,y_im,residual\n";
    for (std::size_t j = 0; j < ts->size(); ++j) {
        os << format_double(ts->point(j)) << "," << format_double(y.values[j].real()) << ","
           << format_double(y.values[j].imag()) << ",";
        if (res.is_defined(j)) os << format_double(std::abs(res.values[j]));
        os << "\n";
    }
    return os.str();
}

std::string solve_to_json(const TimeScalePtr& ts, const SampledFunction& y,
                          const SampledFunction& res) {
    std::ostringstream os;
    os << "{\"t\":[";
    for (std::size_t j = 0; j < ts->size(); ++j) {
        if (j) os << ",";
        os << format_double(ts->point(j));
    }
    os << "],\"y\":[";
    for (std::size_t j = 0; j < ts->size(); ++j) {
        if (j) os << ",";
        os << complex_str(y.values[j]);
    }
    os << "],\"residual\":[";
    for (std::size_t j = 0; j < ts->size(); ++j) {
        if (j) os << ",";
        if (res.is_defined(j)) {
            os << format_double(std::abs(res.values[j]));
        } else {
            os << "null";
        }
    }
    os << "]}";
    return os.str();
}

} // namespace tscalc
