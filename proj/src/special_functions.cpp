#include "tscalc/special_functions.hpp"

#include <cmath>
#include <string>

namespace tscalc {

std::vector<SampledFunction> hk_table(const TimeScalePtr& ts, double a,
                                      std::size_t k_max) {
    const std::size_t ia = ts->anchor_index(a);
    const std::size_t n = ts->size();
    std::vector<SampledFunction> table;
    table.reserve(k_max + 1);
    table.push_back(SampledFunction::constant(ts, 1.0));

    if (!ts->discrete()) {
        const double left = ts->point(0);
        double factorial = 1.0;
        for (std::size_t k = 1; k <= k_max; ++k) {
            factorial *= static_cast<double>(k);
            SampledFunction hk = SampledFunction::constant(ts, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                const double dt = ts->point(j) - left;
                hk.values[j] = std::pow(dt, static_cast<double>(k)) / factorial;
            }
            table.push_back(std::move(hk));
        }
        return table;
    }

    // Oriented cumulative delta integral from the anchor, by prefix scan:
    // S_j = sum_{i<j} mu_i * h_{k-1}(t_i), then h_k(t_j) = S_j - S_{ia}.
    // This covers t < a with the negated-sum convention and keeps a fixed
    // left-to-right association order.
    std::vector<Complex> prefix(n);
    for (std::size_t k = 1; k <= k_max; ++k) {
        const SampledFunction& prev = table[k - 1];
        Complex acc = 0.0;
        prefix[0] = 0.0;
        for (std::size_t j = 1; j < n; ++j) {
            acc += ts->graininess(j - 1) * prev.values[j - 1];
            prefix[j] = acc;
        }
        SampledFunction hk = SampledFunction::constant(ts, 0.0);
        const Complex base = prefix[ia];
        for (std::size_t j = 0; j < n; ++j) {
            hk.values[j] = prefix[j] - base;
        }
        hk.values[ia] = 0.0; // h_k(a, a) = 0 exactly for k >= 1
        table.push_back(std::move(hk));
    }
    return table;
}

SampledFunction exp_lambda(const TimeScalePtr& ts, Complex lambda, double a) {
    const std::size_t ia = ts->anchor_index(a);
    const std::size_t n = ts->size();

    if (!ts->discrete()) {
        const double left = ts->point(0);
        return SampledFunction::sample(
            ts, [&](double t) { return std::exp(lambda * (t - left)); });
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Complex factor = 1.0 + ts->graininess(i) * lambda;
        if (std::abs(factor) <= regressivity_eps) {
            throw Error(errc::not_regressive,
                        "exp_lambda: 1 + mu*lambda vanishes at grid index " + std::to_string(i),
                        i);
        }
    }

    // Prefix products P_j = prod_{i<j}(1 + mu_i*lambda); e(t_j, a) = P_j / P_ia
    // gives the forward product past the anchor and the reciprocal product
    // behind it.
    SampledFunction e = SampledFunction::constant(ts, 1.0);
    Complex running = 1.0;
    for (std::size_t j = 1; j < n; ++j) {
        running *= 1.0 + ts->graininess(j - 1) * lambda;
        e.values[j] = running;
    }
    const Complex base = e.values[ia];
    for (std::size_t j = 0; j < n; ++j) {
        e.values[j] /= base;
    }
    e.values[ia] = 1.0; // e(a, a) = 1 exactly
    return e;
}

} // namespace tscalc
