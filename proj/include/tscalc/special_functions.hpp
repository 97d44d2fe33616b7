#pragma once

#include <vector>

#include "tscalc/timescale.hpp"

namespace tscalc {

/// Absolute threshold below which a factor 1 + mu*lambda counts as a
/// regressivity violation.
inline constexpr double regressivity_eps = 1e-12;

/// Generalized polynomials h_0..h_{k_max} anchored at `a`.
///
/// h_0 == 1 and h_k(t, a) is the delta integral of h_{k-1}( . , a) from
/// a to t. On discrete scales this is a forward cumulative sum with the
/// oriented-integral convention for t < a (negated sum); on
/// real_interval it is (t - a)^k / k!.
///
/// `a` must lie on the scale (left endpoint for real_interval).
std::vector<SampledFunction> hk_table(const TimeScalePtr& ts, double a,
                                      std::size_t k_max);

/// Time-scale exponential e_lambda( . , a): the solution of
/// y^Delta = lambda * y with y(a) = 1.
///
/// Discrete scales: product of (1 + mu_i * lambda) factors forward of a
/// and reciprocal products behind it; every factor on the scale must be
/// nonzero (NotRegressive names the first offending index).
/// real_interval: exp(lambda * (t - a)).
SampledFunction exp_lambda(const TimeScalePtr& ts, Complex lambda, double a);

/// Circle-plus: lambda1 (+) lambda2 = lambda1 + lambda2 + mu*lambda1*lambda2.
inline Complex circle_plus(Complex lambda1, Complex lambda2, double mu) noexcept {
    return lambda1 + lambda2 + mu * lambda1 * lambda2;
}

} // namespace tscalc
