#include "tscalc/verify.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace tscalc {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_scale_length(const TimeScalePtr& ts, std::size_t n_min, const char* what) {
    if (ts->size() < n_min) {
        throw Error(errc::scale_too_short, std::string(what) + ": need at least " +
                                               std::to_string(n_min) + " points");
    }
}

} // namespace

bool VerificationReport::ok(double tol) const noexcept {
    if (!admissibility.passed()) return false;
    for (const auto& field : {residual_max, xi_discrepancy_max, step_oracle_discrepancy_max,
                              wronskian_discrepancy_max}) {
        if (field && !(std::isfinite(*field) && *field <= tol)) return false;
    }
    if (wronskian_min_abs && !(std::isfinite(*wronskian_min_abs) && *wronskian_min_abs > 0.0)) {
        return false;
    }
    return true;
}

SampledFunction forcing_table(const TimeScalePtr& ts, const ProblemSpec& spec) {
    const std::vector<SampledFunction> h = hk_table(ts, spec.anchor, spec.degree());
    SampledFunction f = SampledFunction::constant(ts, 0.0);
    for (std::size_t j = 0; j < ts->size(); ++j) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i < spec.gamma.size(); ++i) {
            acc += spec.gamma[i] * h[i].values[j];
        }
        f.values[j] = acc;
    }
    return f;
}

SampledFunction residual(const TimeScalePtr& ts, const SampledFunction& y,
                         const ProblemSpec& spec) {
    if (!ts->discrete()) {
        throw Error(errc::unsupported_scale,
                    "residual: use residual_analytic on real_interval");
    }
    require_scale_length(ts, 3, "residual");
    if (y.scale.get() != ts.get() || y.defined != ts->size()) {
        throw Error(errc::invalid_argument,
                    "residual: y must be fully defined on the given scale");
    }
    const SampledFunction d1 = delta_derivative(y);
    const SampledFunction d2 = delta_derivative(d1);
    const SampledFunction f = forcing_table(ts, spec);

    SampledFunction r;
    r.scale = ts;
    r.values.assign(ts->size(), Complex(kNaN, kNaN));
    r.defined = ts->size() - 2;
    for (std::size_t i = 0; i < r.defined; ++i) {
        r.values[i] = d2.values[i] + 2.0 * spec.alpha * d1.values[i] +
                      spec.beta * y.values[i] - f.values[i];
    }
    return r;
}

SampledFunction residual_analytic(const Solution& sol, const ProblemSpec& spec,
                                  const TimeScalePtr& ts) {
    if (!sol.c1 || !sol.c2) {
        throw Error(errc::invalid_argument, "residual_analytic: c1/c2 unset");
    }
    if (sol.xi.size() != spec.gamma.size()) {
        throw Error(errc::invalid_argument,
                    "residual_analytic: xi length does not match the forcing degree");
    }
    // y'  = c1*l1*e1 + c2*l2*e2 + sum_{i>=1} xi_i h_{i-1}
    // y'' = c1*l1^2*e1 + c2*l2^2*e2 + sum_{i>=2} xi_i h_{i-2}
    const SampledFunction e1 = exp_lambda(ts, sol.lambda1, spec.anchor);
    const SampledFunction e2 = exp_lambda(ts, sol.lambda2, spec.anchor);
    const std::vector<SampledFunction> h = hk_table(ts, spec.anchor, spec.degree());
    const std::size_t k = spec.degree();

    SampledFunction r = SampledFunction::constant(ts, 0.0);
    for (std::size_t j = 0; j < ts->size(); ++j) {
        const Complex he1 = *sol.c1 * e1.values[j];
        const Complex he2 = *sol.c2 * e2.values[j];
        Complex y = he1 + he2;
        Complex yd = sol.lambda1 * he1 + sol.lambda2 * he2;
        Complex ydd = sol.lambda1 * sol.lambda1 * he1 + sol.lambda2 * sol.lambda2 * he2;
        Complex forcing = 0.0;
        for (std::size_t i = 0; i <= k; ++i) {
            y += sol.xi[i] * h[i].values[j];
            if (i >= 1) yd += sol.xi[i] * h[i - 1].values[j];
            if (i >= 2) ydd += sol.xi[i] * h[i - 2].values[j];
            forcing += spec.gamma[i] * h[i].values[j];
        }
        r.values[j] = ydd + 2.0 * spec.alpha * yd + spec.beta * y - forcing;
    }
    return r;
}

SampledFunction forward_step_oracle(const TimeScalePtr& ts, const ProblemSpec& spec,
                                    Complex y0, Complex yd0) {
    if (!ts->discrete()) {
        throw Error(errc::unsupported_scale, "forward_step_oracle: discrete scales only");
    }
    require_scale_length(ts, 3, "forward_step_oracle");
    const std::size_t n = ts->size();
    const std::size_t ia = ts->anchor_index(spec.anchor);
    if (ia + 1 >= n) {
        throw Error(errc::invalid_argument,
                    "forward_step_oracle: anchor must not be the last grid point");
    }
    const SampledFunction f = forcing_table(ts, spec);

    SampledFunction y = SampledFunction::constant(ts, 0.0);
    y.values[ia] = y0;
    y.values[ia + 1] = y0 + ts->graininess(ia) * yd0;

    // Forward of the anchor: advance the first difference quotient, then
    // the value. Inverts the residual formula term by term.
    for (std::size_t i = ia; i + 2 < n; ++i) {
        const double mu_i = ts->graininess(i);
        const double mu_n = ts->graininess(i + 1);
        const Complex d1 = (y.values[i + 1] - y.values[i]) / mu_i;
        const Complex d1_next =
            d1 + mu_i * (f.values[i] - 2.0 * spec.alpha * d1 - spec.beta * y.values[i]);
        y.values[i + 2] = y.values[i + 1] + mu_n * d1_next;
    }

    // Behind the anchor: solve the pointwise equation for y_i. The
    // coefficient of y_i is the regressivity polynomial over mu_i^2, so
    // this direction does require regressivity.
    for (std::size_t j = ia; j >= 1; --j) {
        const std::size_t i = j - 1;
        const double mu_i = ts->graininess(i);
        const double mu_n = ts->graininess(i + 1);
        const double coeff = 1.0 - 2.0 * spec.alpha * mu_i + spec.beta * mu_i * mu_i;
        if (std::abs(coeff) <= 1e-12) {
            throw Error(errc::not_regressive,
                        "forward_step_oracle: back-fill needs 1 - 2*alpha*mu + beta*mu^2 != 0 "
                        "at grid index " + std::to_string(i),
                        i);
        }
        const Complex d1_next = (y.values[i + 2] - y.values[i + 1]) / mu_n;
        const Complex rhs = f.values[i] - d1_next / mu_i + y.values[i + 1] / (mu_i * mu_i) -
                            2.0 * spec.alpha * y.values[i + 1] / mu_i;
        y.values[i] = rhs * (mu_i * mu_i) / coeff;
    }
    return y;
}

SampledFunction wronskian_direct(const TimeScalePtr& ts, const ProblemSpec& spec) {
    auto [l1, l2] = characteristic_roots(spec.alpha, spec.beta);
    const SampledFunction e1 = exp_lambda(ts, l1, spec.anchor);
    const SampledFunction e2 = exp_lambda(ts, l2, spec.anchor);

    if (!ts->discrete()) {
        SampledFunction w = SampledFunction::constant(ts, 0.0);
        for (std::size_t j = 0; j < ts->size(); ++j) {
            w.values[j] = e1.values[j] * (l2 * e2.values[j]) -
                          (l1 * e1.values[j]) * e2.values[j];
        }
        return w;
    }

    const SampledFunction d1 = delta_derivative(e1);
    const SampledFunction d2 = delta_derivative(e2);
    SampledFunction w;
    w.scale = ts;
    w.values.assign(ts->size(), Complex(kNaN, kNaN));
    w.defined = ts->size() - 1;
    for (std::size_t i = 0; i < w.defined; ++i) {
        w.values[i] = e1.values[i] * d2.values[i] - d1.values[i] * e2.values[i];
    }
    return w;
}

SampledFunction wronskian_closed(const TimeScalePtr& ts, const ProblemSpec& spec) {
    if (std::abs(spec.beta - spec.alpha * spec.alpha) <= hypothesis_eps) {
        throw Error(errc::degenerate_roots,
                    "wronskian_closed: hypothesis beta != alpha^2 violated");
    }
    const Complex two_sqrt = 2.0 * std::sqrt(Complex(spec.alpha * spec.alpha - spec.beta, 0.0));

    if (!ts->discrete()) {
        const double a = ts->point(0);
        return SampledFunction::sample(ts, [&](double t) {
            return two_sqrt * std::exp(Complex(-2.0 * spec.alpha, 0.0) * (t - a));
        });
    }

    // e_{-2*alpha + mu*beta} with mu varying per point: the factors are
    // exactly the regressivity polynomial values.
    const std::size_t ia = ts->anchor_index(spec.anchor);
    SampledFunction w = SampledFunction::constant(ts, 1.0);
    Complex running = 1.0;
    for (std::size_t j = 1; j < ts->size(); ++j) {
        const double mu = ts->graininess(j - 1);
        running *= 1.0 - 2.0 * spec.alpha * mu + spec.beta * mu * mu;
        w.values[j] = running;
    }
    const Complex base = w.values[ia];
    for (std::size_t j = 0; j < ts->size(); ++j) {
        w.values[j] = (j == ia) ? two_sqrt : two_sqrt * (w.values[j] / base);
    }
    return w;
}

std::pair<double, double> wronskian_check(const TimeScalePtr& ts, const ProblemSpec& spec) {
    const SampledFunction direct = wronskian_direct(ts, spec);
    const SampledFunction closed = wronskian_closed(ts, spec);
    double max_rel = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < direct.defined; ++i) {
        max_rel = std::max(max_rel, rel_gap(direct.values[i], closed.values[i]));
        min_abs = std::min(min_abs, std::abs(direct.values[i]));
    }
    return {max_rel, min_abs};
}

VerificationReport full_report(const ProblemSpec& spec, const TimeScalePtr& ts,
                               Complex y0, Complex yd0) {
    VerificationReport report;
    report.admissibility = check_admissibility(spec, ts);
    const AdmissibilityReport& adm = report.admissibility;

    if (!adm.beta_nonzero) {
        report.notes.push_back("hypothesis beta != 0 failed: |beta| <= 1e-9");
    }
    if (!adm.beta_ne_alpha_sq) {
        report.notes.push_back("hypothesis beta != alpha^2 failed: |beta - alpha^2| <= 1e-9");
    }
    if (!adm.regressive) {
        report.notes.push_back(
            "hypothesis 1 - 2*alpha*mu + beta*mu^2 != 0 failed at grid index " +
            std::to_string(*adm.first_non_regressive_index));
    }
    if (!adm.factorization_agree) {
        report.notes.push_back("regressivity factorization cross-check disagreed");
    }
    if (!adm.beta_nonzero || !adm.beta_ne_alpha_sq) {
        report.notes.push_back("solver fields skipped: failed admissibility hypothesis");
        return report;
    }

    // Both xi paths need only the beta hypotheses, not the scale.
    {
        const std::vector<Complex> xi_rec = xi_backward_recursion(spec);
        const std::vector<Complex> xi_cf = xi_closed_form(spec);
        double worst = 0.0;
        for (std::size_t i = 0; i < xi_rec.size(); ++i) {
            worst = std::max(worst, rel_gap(xi_rec[i], xi_cf[i]));
        }
        report.xi_discrepancy_max = worst;
    }

    if (!adm.regressive) {
        report.notes.push_back("exponential-based checks skipped: scale not regressive");
        return report;
    }

    try {
        const Solution sol = solve_ivp(spec, ts, y0, yd0);
        const SampledFunction y = evaluate_solution(sol, spec, ts);
        const double y_scale = std::max(1.0, y.max_abs());

        const SampledFunction r =
            ts->discrete() ? residual(ts, y, spec) : residual_analytic(sol, spec, ts);
        double r_max = 0.0;
        for (std::size_t i = 0; i < r.defined; ++i) r_max = std::max(r_max, std::abs(r.values[i]));
        report.residual_max = r_max / y_scale;

        if (ts->discrete()) {
            const SampledFunction y_step = forward_step_oracle(ts, spec, y0, yd0);
            double worst = 0.0;
            for (std::size_t j = 0; j < ts->size(); ++j) {
                worst = std::max(worst, rel_gap(y.values[j], y_step.values[j]));
            }
            report.step_oracle_discrepancy_max = worst;
        } else {
            report.notes.push_back("forward stepping skipped on real_interval");
        }

        const auto [w_rel, w_min] = wronskian_check(ts, spec);
        report.wronskian_discrepancy_max = w_rel;
        report.wronskian_min_abs = w_min;
    } catch (const Error& e) {
        report.notes.push_back(std::string("solver path failed: ") + e.what());
    }
    return report;
}

} // namespace tscalc
