#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tscalc/solver.hpp"

namespace tscalc {

/// Aggregated verification outcome. Discrepancy fields are absent when
/// the quantity could not be computed (failed hypothesis, unsupported
/// scale kind); notes say why.
struct VerificationReport {
    std::optional<double> residual_max;
    std::optional<double> xi_discrepancy_max;
    std::optional<double> step_oracle_discrepancy_max;
    std::optional<double> wronskian_discrepancy_max;
    std::optional<double> wronskian_min_abs;
    AdmissibilityReport admissibility;
    std::vector<std::string> notes;

    /// True when admissibility passed and every present discrepancy is
    /// within `tol`.
    bool ok(double tol) const noexcept;
};

/// The forcing sum  f(t) = sum_j gamma_j h_j(t, a)  sampled on `ts`.
/// Residual and stepper both draw from this one definition so they share
/// identical forcing rounding.
SampledFunction forcing_table(const TimeScalePtr& ts, const ProblemSpec& spec);

/// Pointwise residual  y^DD + 2*alpha*y^D + beta*y - f  on a discrete
/// scale; the last two indices are undefined. `y` must be fully defined
/// on `ts`.
SampledFunction residual(const TimeScalePtr& ts, const SampledFunction& y,
                         const ProblemSpec& spec);

/// Residual of the closed-form solution on real_interval, using the
/// analytic derivative rules e' = lambda*e and h_k' = h_{k-1} instead of
/// differencing samples. Defined at every sample point.
SampledFunction residual_analytic(const Solution& sol, const ProblemSpec& spec,
                                  const TimeScalePtr& ts);

/// Direct simulation: seed y = y0, y^Delta = yd0 at the anchor and solve
/// the pointwise equation for the next value. Points behind the anchor
/// are back-filled by solving the same equation for y_i, which divides
/// by the regressivity polynomial.
SampledFunction forward_step_oracle(const TimeScalePtr& ts, const ProblemSpec& spec,
                                    Complex y0, Complex yd0);

/// Wronskian via sampled exponentials and difference quotients:
/// W = y1*y2^D - y1^D*y2. Undefined at the last point of a discrete scale.
SampledFunction wronskian_direct(const TimeScalePtr& ts, const ProblemSpec& spec);

/// Wronskian via the closed form 2*sqrt(alpha^2-beta) * e_{-2*alpha+mu*beta},
/// the graininess interpreted per point. Defined everywhere.
SampledFunction wronskian_closed(const TimeScalePtr& ts, const ProblemSpec& spec);

/// {max relative discrepancy between the two Wronskian paths,
///  min |W_direct|} over the defined indices.
std::pair<double, double> wronskian_check(const TimeScalePtr& ts, const ProblemSpec& spec);

/// Run admissibility, both xi paths, closed-form evaluation, forward
/// stepping, residual and the Wronskian check; aggregate the maxima.
/// Failures are embedded in the report rather than thrown.
VerificationReport full_report(const ProblemSpec& spec, const TimeScalePtr& ts,
                               Complex y0, Complex yd0);

} // namespace tscalc
