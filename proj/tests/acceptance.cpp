// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion draws its own seeded corpus so a failure is reproducible.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "tscalc/special_functions.hpp"
#include "tscalc/solver.hpp"
#include "tscalc/timescale.hpp"
#include "tscalc/verify.hpp"

using namespace tscalc;

namespace {

int g_failures = 0;

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// body() returns the pass detail or throws with the failure detail.
template <typename F>
void criterion(int n, double budget_ms, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        detail = body();
        pass = true;
    } catch (const std::exception& e) {
        detail = e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (pass && budget_ms > 0.0 && ms > budget_ms) {
        pass = false;
        detail += fmt("; runtime %.0f ms exceeds the %.0f ms budget", ms, budget_ms);
    }
    std::printf("criterion %d: %s (%s; %.0f ms)\n", n, pass ? "PASS" : "FAIL", detail.c_str(), ms);
    if (!pass) ++g_failures;
}

struct CliResult {
    int status = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(TSCALC_CLI_PATH) + " " + args + " 2>&1";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    const int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

} // namespace

int main() {
    std::vector<std::pair<ProblemSpec, TimeScalePtr>> unit_corpus;
    std::vector<corpus::Instance> step_corpus;

    criterion(1, 2000.0, [&] {
        std::mt19937 rng(1001);
        const TimeScalePtr ts = corpus::unit_grid(50);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            ProblemSpec spec = corpus::unit_grid_spec(rng);
            const Complex y0(corpus::uniform(rng, -1.0, 1.0));
            const Complex yd0(corpus::uniform(rng, -1.0, 1.0));
            const Solution sol = solve_ivp(spec, ts, y0, yd0);
            const SampledFunction y = evaluate_solution(sol, spec, ts);
            const SampledFunction r = residual(ts, y, spec);
            worst = std::max(worst, r.max_abs() / std::max(1.0, y.max_abs()));
            unit_corpus.emplace_back(std::move(spec), ts);
        }
        if (worst > 1e-8)
            throw std::runtime_error(fmt("max normalized residual %.3g exceeds 1e-8", worst));
        return fmt("max normalized residual %.3g over 200 specs, 50-point unit grids", worst);
    });

    criterion(2, 1000.0, [&] {
        std::mt19937 rng(1002);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const ProblemSpec spec = corpus::coefficient_spec(rng, trial < 50);
            const auto rec = xi_backward_recursion(spec);
            const auto closed = xi_closed_form(spec);
            for (std::size_t i = 0; i < rec.size(); ++i)
                worst = std::max(worst, rel_gap(closed[i], rec[i]));
        }
        if (worst > 1e-8)
            throw std::runtime_error(fmt("max xi path discrepancy %.3g exceeds 1e-8", worst));
        return fmt("max xi path discrepancy %.3g over 200 specs (50 complex-root)", worst);
    });

    criterion(3, 2000.0, [&] {
        std::mt19937 rng(1003);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            corpus::Instance inst = corpus::stepping_instance(rng);
            const SampledFunction stepped =
                forward_step_oracle(inst.ts, inst.spec, inst.y0, inst.yd0);
            const Solution sol = solve_ivp(inst.spec, inst.ts, inst.y0, inst.yd0);
            const SampledFunction closed = evaluate_solution(sol, inst.spec, inst.ts);
            for (std::size_t i = 0; i < inst.ts->size(); ++i)
                worst = std::max(worst, rel_gap(stepped.values[i], closed.values[i]));
            step_corpus.push_back(std::move(inst));
        }
        if (worst > 1e-8)
            throw std::runtime_error(fmt("max stepper discrepancy %.3g exceeds 1e-8", worst));
        return fmt("max stepper vs closed-form discrepancy %.3g over 100 grids", worst);
    });

    criterion(4, 100.0, [&] {
        const TimeScalePtr iv = TimeScale::real_interval(0.0, 2.0 * std::numbers::pi, 100);

        ProblemSpec flat;
        flat.alpha = 0.0;
        flat.beta = 1.0;
        flat.gamma = {1.0};
        flat.anchor = 0.0;
        const SampledFunction yc =
            evaluate_solution(solve_ivp(flat, iv, Complex(1.0), Complex(0.0)), flat, iv);
        for (std::size_t i = 0; i < iv->size(); ++i)
            if (yc.values[i] != Complex(1.0))
                throw std::runtime_error(fmt("constant solution not exact at index %.0f",
                                             static_cast<double>(i)));

        ProblemSpec osc = flat;
        osc.gamma = {0.0};
        const SampledFunction ys =
            evaluate_solution(solve_ivp(osc, iv, Complex(0.0), Complex(1.0)), osc, iv);
        double worst = 0.0;
        for (std::size_t i = 0; i < iv->size(); ++i)
            worst = std::max(worst, std::abs(ys.values[i] - Complex(std::sin(iv->point(i)))));
        if (worst > 1e-10)
            throw std::runtime_error(fmt("sine deviation %.3g exceeds 1e-10", worst));
        return fmt("y==1 bitwise and |y - sin| <= %.3g at 100 points of [0, 2pi]", worst);
    });

    criterion(5, 100.0, [&] {
        long long binom[13][13] = {};
        for (int n = 0; n <= 12; ++n) {
            binom[n][0] = 1;
            for (int k = 1; k <= n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
        }
        const auto h = hk_table(corpus::unit_grid(13), 0.0, 6);
        for (int n = 0; n <= 12; ++n)
            for (int k = 0; k <= 6; ++k)
                if (h[static_cast<std::size_t>(k)].values[static_cast<std::size_t>(n)] !=
                    Complex(static_cast<double>(binom[n][k])))
                    throw std::runtime_error(
                        fmt("h_%.0f(%.0f, 0) != binomial", static_cast<double>(k),
                            static_cast<double>(n)));
        const SampledFunction e = exp_lambda(corpus::unit_grid(21), Complex(1.0), 0.0);
        for (int t = 0; t <= 20; ++t)
            if (e.values[static_cast<std::size_t>(t)] != Complex(std::ldexp(1.0, t)))
                throw std::runtime_error(fmt("e_1(%.0f, 0) != 2^t", static_cast<double>(t)));
        return std::string("h_k(n,0) == C(n,k) for n <= 12, k <= 6 and e_1 == 2^t for t <= 20,"
                           " all bitwise");
    });

    criterion(6, 0.0, [&] {
        double worst = 0.0;
        auto check = [&worst](const ProblemSpec& spec, const TimeScalePtr& ts) {
            const auto [l1, l2] = characteristic_roots(spec.alpha, spec.beta);
            worst = std::max(worst, rel_gap(l1 + l2, Complex(-2.0 * spec.alpha)));
            worst = std::max(worst, rel_gap(l1 * l2, Complex(spec.beta)));
            for (std::size_t i = 0; i + 1 < ts->size(); ++i) {
                const double mu = ts->graininess(i);
                worst = std::max(worst, rel_gap(circle_plus(l1, l2, mu),
                                                Complex(-2.0 * spec.alpha + mu * spec.beta)));
                worst = std::max(
                    worst, rel_gap((1.0 + mu * l1) * (1.0 + mu * l2),
                                   Complex(1.0 - 2.0 * spec.alpha * mu + spec.beta * mu * mu)));
            }
        };
        for (const auto& [spec, ts] : unit_corpus) check(spec, ts);
        for (const auto& inst : step_corpus) check(inst.spec, inst.ts);
        if (unit_corpus.empty() || step_corpus.empty())
            throw std::runtime_error("corpus unavailable (criterion 1 or 3 did not run)");
        if (worst > 1e-10)
            throw std::runtime_error(fmt("identity gap %.3g exceeds 1e-10", worst));
        return fmt("root/circle-plus/factorization identities hold to %.3g over 300 instances",
                   worst);
    });

    criterion(7, 0.0, [&] {
        double worst = 0.0;
        double min_w = std::numeric_limits<double>::infinity();
        std::size_t count = 0;
        auto check = [&](const ProblemSpec& spec, const TimeScalePtr& ts) {
            const auto [gap, wmin] = wronskian_check(ts, spec);
            worst = std::max(worst, gap);
            min_w = std::min(min_w, wmin);
            ++count;
        };
        for (const auto& [spec, ts] : unit_corpus) check(spec, ts);
        for (const auto& inst : step_corpus) check(inst.spec, inst.ts);

        ProblemSpec qspec;
        qspec.alpha = 0.0;
        qspec.beta = 1.0;
        qspec.gamma = {0.0};
        qspec.anchor = 1.0;
        check(qspec, TimeScale::q_scale(1.5, 1.0, 20));

        ProblemSpec irr;
        irr.alpha = 0.5;
        irr.beta = 2.0; // 1 - mu + 2 mu^2 has no real roots
        irr.gamma = {0.0};
        irr.anchor = 0.0;
        check(irr, TimeScale::grid({0.0, 0.3, 0.45, 1.0, 1.2, 2.0, 2.05, 3.0}));

        if (worst > 1e-8)
            throw std::runtime_error(fmt("Wronskian path discrepancy %.3g exceeds 1e-8", worst));
        if (!(min_w > 0.0))
            throw std::runtime_error(fmt("min |W| = %.3g is not positive", min_w));
        return fmt("both Wronskian paths agree to %.3g, min |W| = %.3g > 0", worst, min_w);
    });

    criterion(8, 0.0, [&] {
        const std::string scale = "--scale '{\"kind\":\"uniform\",\"start\":0,\"step\":1,"
                                  "\"count\":6}'";
        const struct {
            const char* problem;
            const char* named;
        } cases[] = {
            {"{\"alpha\":1,\"beta\":0,\"gamma\":[1],\"anchor\":0}", "beta != 0"},
            {"{\"alpha\":2,\"beta\":4,\"gamma\":[1],\"anchor\":0}", "beta != alpha^2"},
            {"{\"alpha\":1,\"beta\":1,\"gamma\":[1],\"anchor\":0}",
             "1 - 2*alpha*mu + beta*mu^2 != 0"},
            // pure regressivity failure (both beta hypotheses hold)
            {"{\"alpha\":1.25,\"beta\":1.5,\"gamma\":[1],\"anchor\":0}", "grid index 0"},
        };
        for (const auto& c : cases) {
            const CliResult r =
                run_cli("verify " + scale + " --problem '" + std::string(c.problem) + "'");
            if (r.status != 2)
                throw std::runtime_error(fmt("expected exit 2, got %.0f",
                                             static_cast<double>(r.status)) +
                                         " for " + c.problem);
            if (r.out.find(c.named) == std::string::npos)
                throw std::runtime_error(std::string("hypothesis '") + c.named +
                                         "' not named for " + c.problem);
        }
        return std::string("beta=0, beta=alpha^2 and non-regressive inputs exit 2 naming the "
                           "violated hypothesis");
    });

    if (g_failures != 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
