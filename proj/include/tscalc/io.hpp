#pragma once

#include <optional>
#include <string>

#include "tscalc/solver.hpp"
#include "tscalc/verify.hpp"

namespace tscalc {

/// One double, 17 significant digits (round-trip safe), C locale.
std::string format_double(double v);

/// Parse a time-scale spec, one JSON object:
///   {"kind":"grid","points":[...]}
///   {"kind":"uniform","start":a,"step":h,"count":N}
///   {"kind":"q_scale","q":q,"first":t0,"count":N}
///   {"kind":"real_interval","a":a,"b":b,"samples":N}
/// Parse/validation failures throw Error{parse_error} naming the field.
TimeScalePtr parse_scale_spec(const std::string& json_text);

/// Problem spec plus optional initial conditions:
///   {"alpha":a,"beta":b,"gamma":[...],"anchor":t,"ic":{"y":y0,"yd":yd0}}
/// ic values may be numbers or [re, im] pairs.
struct ParsedProblem {
    ProblemSpec spec;
    std::optional<Complex> y0;
    std::optional<Complex> yd0;
};
ParsedProblem parse_problem_spec(const std::string& json_text);

/// Coefficients document {lambda1, lambda2, xi[], omega1, omega2, c1, c2},
/// complex numbers as [re, im] pairs, absent entries as null.
std::string coeffs_to_json(const Solution& sol);
Solution parse_coeffs_json(const std::string& json_text);

std::string report_to_json(const VerificationReport& report);

/// Points, graininess values and (when alpha/beta are given) the
/// regressivity polynomial 1 - 2*alpha*mu + beta*mu^2 per point.
std::string scale_info_json(const TimeScalePtr& ts,
                            const std::optional<std::pair<double, double>>& alpha_beta);

/// CSV rows `t,y_re,y_im,residual`; the residual column holds |r| and is
/// blank at undefined indices.
std::string solve_to_csv(const TimeScalePtr& ts, const SampledFunction& y,
                         const SampledFunction& res);

/// Same content as solve_to_csv as one JSON object
/// {"t":[...],"y":[[re,im],...],"residual":[...,null at undefined]}.
std::string solve_to_json(const TimeScalePtr& ts, const SampledFunction& y,
                          const SampledFunction& res);

} // namespace tscalc
