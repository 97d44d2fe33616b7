#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "tscalc/special_functions.hpp"
#include "tscalc/timescale.hpp"

namespace tscalc {

/// Per-point relative gap with an absolute floor of 1, so comparisons
/// between exponentially growing values stay meaningful.
inline double rel_gap(Complex a, Complex b) noexcept {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

/// Guard tolerance for the excluded hypersurfaces beta = 0 and
/// beta = alpha^2. Near-degenerate inputs are rejected rather than
/// solved with ill-conditioned coefficients.
inline constexpr double hypothesis_eps = 1e-9;

/// Equation data for  y^DD + 2*alpha*y^D + beta*y = sum gamma_i h_i(., a).
struct ProblemSpec {
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> gamma; // gamma_0..gamma_k, nonempty; degree as declared
    double anchor = 0.0;

    std::size_t degree() const { return gamma.empty() ? 0 : gamma.size() - 1; }
};

/// Pass/fail per solvability hypothesis, evaluated against a concrete scale.
struct AdmissibilityReport {
    bool beta_nonzero = false;       // |beta| > hypothesis_eps
    bool beta_ne_alpha_sq = false;   // |beta - alpha^2| > hypothesis_eps
    bool regressive = false;         // |1 - 2*alpha*mu + beta*mu^2| > 1e-12 everywhere
    std::optional<std::size_t> first_non_regressive_index;
    double regressivity_min_abs = 0.0;
    // Cross-check: the polynomial against (1 + mu*l1)(1 + mu*l2); absent
    // when the roots are degenerate.
    std::optional<double> factorization_max_rel;
    bool factorization_agree = true;

    bool passed() const noexcept {
        return beta_nonzero && beta_ne_alpha_sq && regressive && factorization_agree;
    }
};

/// Characteristic roots and solution coefficients. omega1/omega2 are
/// absent when the degree is below 2; c1/c2 are absent until an IVP is
/// imposed.
struct Solution {
    Complex lambda1, lambda2;
    std::vector<Complex> xi;
    std::optional<Complex> omega1, omega2;
    std::optional<Complex> c1, c2;
};

/// z^n for integer n (binary exponentiation; negative n divides, valid
/// for nonzero z).
Complex pow_int(Complex z, long long n);

AdmissibilityReport check_admissibility(const ProblemSpec& spec, const TimeScalePtr& ts);

/// Throw the first failed hypothesis by name (BetaZero, DegenerateRoots
/// or NotRegressive with the offending grid index); no-op when passed.
void require_admissible(const AdmissibilityReport& adm);

/// lambda1 = -alpha - sqrt(alpha^2 - beta), lambda2 = -alpha + sqrt(alpha^2 - beta),
/// principal branch. Throws DegenerateRoots when |beta - alpha^2| <= hypothesis_eps.
std::pair<Complex, Complex> characteristic_roots(double alpha, double beta);

/// Terminal coefficients: xi_k = gamma_k / beta and, for k >= 1,
/// xi_{k-1} = (gamma_{k-1} - (2*alpha/beta)*gamma_k) / beta.
std::pair<std::optional<Complex>, Complex> terminal_coefficients(const ProblemSpec& spec);

/// Normative xi path: seed the two terminal coefficients, then iterate
/// xi_i = (gamma_i - xi_{i+2} - 2*alpha*xi_{i+1}) / beta down to i = 0.
std::vector<Complex> xi_backward_recursion(const ProblemSpec& spec);

/// The double sum  sum_{tau=0}^{i-1} sum_{s=0}^{tau-1}
/// gamma_s * lambda1^{i+s-2*tau} * beta^{tau-1-s}  with the
/// empty-sum-is-zero convention. Negative lambda1 powers are complex
/// divisions (lambda1 != 0 since beta != 0).
Complex particular_double_sum(const ProblemSpec& spec, std::size_t i);

/// Homogeneous weights of the closed-form xi: the 2x2 inverse with
/// prefactor 1/(2*beta^{k-1}*sqrt(alpha^2-beta)) applied to the terminal
/// coefficients minus their particular parts. Requires k >= 2
/// (DegreeTooSmall otherwise).
std::pair<Complex, Complex> omega_vector(const ProblemSpec& spec);

/// Closed-form xi: omega1*lambda1^i + omega2*lambda2^i + double sum.
/// For k < 2 this is the terminal path verbatim.
std::vector<Complex> xi_closed_form(const ProblemSpec& spec);

/// Impose y(a) = y0 and y^Delta(a) = yd0. Admissibility must pass on
/// `ts`; failures are thrown with the offending hypothesis named.
Solution solve_ivp(const ProblemSpec& spec, const TimeScalePtr& ts,
                   Complex y0, Complex yd0);

/// y(t) = c1*e_{lambda1}(t,a) + c2*e_{lambda2}(t,a) + sum_i xi_i*h_i(t,a).
SampledFunction evaluate_solution(const Solution& sol, const ProblemSpec& spec,
                                  const TimeScalePtr& ts);

} // namespace tscalc
