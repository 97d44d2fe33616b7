#include "tscalc/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace tscalc {

namespace {

void require_gamma(const ProblemSpec& spec) {
    if (spec.gamma.empty()) {
        throw Error(errc::invalid_argument, "problem: gamma must be nonempty");
    }
}

void require_beta_nonzero(const ProblemSpec& spec) {
    if (std::abs(spec.beta) <= hypothesis_eps) {
        throw Error(errc::beta_zero, "hypothesis beta != 0 violated (|beta| <= 1e-9)");
    }
}

Complex sqrt_discriminant(double alpha, double beta) {
    // principal branch: positive real for alpha^2 > beta, i*sqrt(beta-alpha^2) otherwise
    return std::sqrt(Complex(alpha * alpha - beta, 0.0));
}

} // namespace

Complex pow_int(Complex z, long long n) {
    if (n < 0) return 1.0 / pow_int(z, -n);
    Complex result = 1.0;
    Complex base = z;
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

AdmissibilityReport check_admissibility(const ProblemSpec& spec, const TimeScalePtr& ts) {
    AdmissibilityReport report;
    report.beta_nonzero = std::abs(spec.beta) > hypothesis_eps;
    report.beta_ne_alpha_sq = std::abs(spec.beta - spec.alpha * spec.alpha) > hypothesis_eps;

    const bool roots_ok = report.beta_ne_alpha_sq;
    Complex l1, l2;
    if (roots_ok) {
        const Complex s = sqrt_discriminant(spec.alpha, spec.beta);
        l1 = -spec.alpha - s;
        l2 = -spec.alpha + s;
    }

    // Evaluate 1 - 2*alpha*mu + beta*mu^2 at every grid index; on
    // real_interval mu = 0 and the polynomial is identically 1.
    double min_abs = std::numeric_limits<double>::infinity();
    double fact_max_rel = 0.0;
    auto visit = [&](double mu, std::size_t i) {
        const double poly = 1.0 - 2.0 * spec.alpha * mu + spec.beta * mu * mu;
        if (std::abs(poly) < min_abs) min_abs = std::abs(poly);
        if (std::abs(poly) <= 1e-12 && !report.first_non_regressive_index) {
            report.first_non_regressive_index = i;
        }
        if (roots_ok) {
            const Complex factored = (1.0 + mu * l1) * (1.0 + mu * l2);
            fact_max_rel = std::max(fact_max_rel, rel_gap(poly, factored));
        }
    };
    if (ts->discrete()) {
        for (std::size_t i = 0; i + 1 < ts->size(); ++i) visit(ts->graininess(i), i);
    } else {
        visit(0.0, 0);
    }

    report.regressivity_min_abs = min_abs;
    report.regressive = !report.first_non_regressive_index.has_value();
    if (roots_ok) {
        report.factorization_max_rel = fact_max_rel;
        report.factorization_agree = fact_max_rel <= 1e-10;
    } else {
        report.factorization_agree = true; // not computable; carried by beta_ne_alpha_sq
    }
    return report;
}

std::pair<Complex, Complex> characteristic_roots(double alpha, double beta) {
    if (std::abs(beta - alpha * alpha) <= hypothesis_eps) {
        throw Error(errc::degenerate_roots,
                    "hypothesis beta != alpha^2 violated (|beta - alpha^2| <= 1e-9)");
    }
    const Complex s = sqrt_discriminant(alpha, beta);
    return {-alpha - s, -alpha + s};
}

std::pair<std::optional<Complex>, Complex> terminal_coefficients(const ProblemSpec& spec) {
    require_gamma(spec);
    require_beta_nonzero(spec);
    const std::size_t k = spec.degree();
    const Complex xi_k = spec.gamma[k] / spec.beta;
    if (k == 0) return {std::nullopt, xi_k};
    const Complex xi_km1 =
        (spec.gamma[k - 1] - (2.0 * spec.alpha / spec.beta) * spec.gamma[k]) / spec.beta;
    return {xi_km1, xi_k};
}

std::vector<Complex> xi_backward_recursion(const ProblemSpec& spec) {
    require_gamma(spec);
    require_beta_nonzero(spec);
    const std::size_t k = spec.degree();
    std::vector<Complex> xi(k + 1);
    auto [xi_km1, xi_k] = terminal_coefficients(spec);
    xi[k] = xi_k;
    if (k >= 1) xi[k - 1] = *xi_km1;
    for (std::size_t j = k; j >= 2; --j) {
        const std::size_t i = j - 2;
        xi[i] = (spec.gamma[i] - xi[i + 2] - 2.0 * spec.alpha * xi[i + 1]) / spec.beta;
    }
    return xi;
}

Complex particular_double_sum(const ProblemSpec& spec, std::size_t i) {
    require_gamma(spec);
    require_beta_nonzero(spec);
    auto [l1, l2] = characteristic_roots(spec.alpha, spec.beta);
    (void)l2;
    const Complex beta_c(spec.beta, 0.0);
    Complex sum = 0.0;
    for (std::size_t tau = 0; tau < i; ++tau) {      // outer empty when i = 0
        for (std::size_t s = 0; s < tau; ++s) {      // inner empty when tau in {0, 1}
            if (s >= spec.gamma.size()) break;
            const long long lam_exp = static_cast<long long>(i) + static_cast<long long>(s) -
                                      2 * static_cast<long long>(tau);
            const long long beta_exp =
                static_cast<long long>(tau) - 1 - static_cast<long long>(s);
            sum += spec.gamma[s] * pow_int(l1, lam_exp) * pow_int(beta_c, beta_exp);
        }
    }
    return sum;
}

std::pair<Complex, Complex> omega_vector(const ProblemSpec& spec) {
    require_gamma(spec);
    require_beta_nonzero(spec);
    const std::size_t k = spec.degree();
    if (k < 2) {
        throw Error(errc::degree_too_small,
                    "omega_vector: needs forcing degree k >= 2, got k = " + std::to_string(k));
    }
    auto [l1, l2] = characteristic_roots(spec.alpha, spec.beta);
    const Complex s = sqrt_discriminant(spec.alpha, spec.beta);
    auto [xi_km1, xi_k] = terminal_coefficients(spec);

    const Complex rhs1 = *xi_km1 - particular_double_sum(spec, k - 1);
    const Complex rhs2 = xi_k - particular_double_sum(spec, k);
    const Complex prefactor =
        1.0 / (2.0 * pow_int(Complex(spec.beta, 0.0), static_cast<long long>(k - 1)) * s);

    const Complex omega1 =
        prefactor * (pow_int(l2, static_cast<long long>(k)) * rhs1 -
                     pow_int(l2, static_cast<long long>(k - 1)) * rhs2);
    const Complex omega2 =
        prefactor * (-pow_int(l1, static_cast<long long>(k)) * rhs1 +
                     pow_int(l1, static_cast<long long>(k - 1)) * rhs2);
    return {omega1, omega2};
}

std::vector<Complex> xi_closed_form(const ProblemSpec& spec) {
    require_gamma(spec);
    require_beta_nonzero(spec);
    const std::size_t k = spec.degree();
    if (k < 2) {
        auto [xi_km1, xi_k] = terminal_coefficients(spec);
        if (k == 0) return {xi_k};
        return {*xi_km1, xi_k};
    }
    auto [l1, l2] = characteristic_roots(spec.alpha, spec.beta);
    auto [omega1, omega2] = omega_vector(spec);
    std::vector<Complex> xi(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
        xi[i] = omega1 * pow_int(l1, static_cast<long long>(i)) +
                omega2 * pow_int(l2, static_cast<long long>(i)) +
                particular_double_sum(spec, i);
    }
    return xi;
}

void require_admissible(const AdmissibilityReport& adm) {
    if (!adm.beta_nonzero) {
        throw Error(errc::beta_zero, "hypothesis beta != 0 violated (|beta| <= 1e-9)");
    }
    if (!adm.beta_ne_alpha_sq) {
        throw Error(errc::degenerate_roots,
                    "hypothesis beta != alpha^2 violated (|beta - alpha^2| <= 1e-9)");
    }
    if (!adm.regressive) {
        throw Error(errc::not_regressive,
                    "hypothesis 1 - 2*alpha*mu + beta*mu^2 != 0 violated at grid index " +
                        std::to_string(*adm.first_non_regressive_index),
                    *adm.first_non_regressive_index);
    }
}

Solution solve_ivp(const ProblemSpec& spec, const TimeScalePtr& ts,
                   Complex y0, Complex yd0) {
    require_admissible(check_admissibility(spec, ts));

    Solution sol;
    std::tie(sol.lambda1, sol.lambda2) = characteristic_roots(spec.alpha, spec.beta);
    sol.xi = xi_backward_recursion(spec);
    const std::size_t k = spec.degree();
    if (k >= 2) {
        auto [omega1, omega2] = omega_vector(spec);
        sol.omega1 = omega1;
        sol.omega2 = omega2;
    }

    // e(a,a) = 1 and h_i(a,a) = 0 for i >= 1, so the IVP collapses to a
    // 2x2 system with determinant lambda2 - lambda1 = 2*sqrt(alpha^2-beta).
    const Complex xi1 = (k >= 1) ? sol.xi[1] : Complex(0.0);
    const Complex r0 = y0 - sol.xi[0];
    const Complex r1 = yd0 - xi1;
    const Complex det = sol.lambda2 - sol.lambda1;
    sol.c1 = (r0 * sol.lambda2 - r1) / det;
    sol.c2 = (r1 - r0 * sol.lambda1) / det;
    return sol;
}

SampledFunction evaluate_solution(const Solution& sol, const ProblemSpec& spec,
                                  const TimeScalePtr& ts) {
    if (!sol.c1 || !sol.c2) {
        throw Error(errc::invalid_argument,
                    "evaluate_solution: c1/c2 unset (impose an IVP first)");
    }
    if (sol.xi.size() != spec.gamma.size()) {
        throw Error(errc::invalid_argument,
                    "evaluate_solution: xi length does not match the forcing degree");
    }
    const SampledFunction e1 = exp_lambda(ts, sol.lambda1, spec.anchor);
    const SampledFunction e2 = exp_lambda(ts, sol.lambda2, spec.anchor);
    const std::vector<SampledFunction> h = hk_table(ts, spec.anchor, spec.degree());

    SampledFunction y = SampledFunction::constant(ts, 0.0);
    for (std::size_t j = 0; j < ts->size(); ++j) {
        Complex acc = *sol.c1 * e1.values[j] + *sol.c2 * e2.values[j];
        for (std::size_t i = 0; i < sol.xi.size(); ++i) {
            acc += sol.xi[i] * h[i].values[j];
        }
        y.values[j] = acc;
    }
    return y;
}

} // namespace tscalc
