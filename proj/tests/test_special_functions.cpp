#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "tscalc/special_functions.hpp"
#include "tscalc/timescale.hpp"

using namespace tscalc;

namespace {

TimeScalePtr unit_grid(double start, std::size_t n) {
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = start + static_cast<double>(i);
    return TimeScale::grid(pts);
}

// Direct recursive summation, deliberately naive: no prefix scan, one
// nested pass per level. Mirrors the defining recursion only.
double hk_direct(const TimeScalePtr& ts, std::size_t ia, std::size_t k, std::size_t j) {
    if (k == 0) return 1.0;
    double acc = 0.0;
    if (j >= ia) {
        for (std::size_t i = ia; i < j; ++i) {
            acc += ts->graininess(i) * hk_direct(ts, ia, k - 1, i);
        }
    } else {
        for (std::size_t i = j; i < ia; ++i) {
            acc -= ts->graininess(i) * hk_direct(ts, ia, k - 1, i);
        }
    }
    return acc;
}

Complex exp_direct(const TimeScalePtr& ts, Complex lambda, std::size_t ia, std::size_t j) {
    Complex acc = 1.0;
    if (j >= ia) {
        for (std::size_t i = ia; i < j; ++i) acc *= 1.0 + ts->graininess(i) * lambda;
    } else {
        for (std::size_t i = j; i < ia; ++i) acc /= 1.0 + ts->graininess(i) * lambda;
    }
    return acc;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

} // namespace

TEST_CASE("h_1 is t - a on every scale kind") {
    const auto grids = {TimeScale::grid({-1.0, 0.0, 0.5, 2.0, 3.5}),
                        TimeScale::uniform(1.0, 0.25, 9), TimeScale::q_scale(1.5, 1.0, 8)};
    for (const auto& ts : grids) {
        const double a = ts->point(1);
        const auto h = hk_table(ts, a, 1);
        for (std::size_t j = 0; j < ts->size(); ++j) {
            CHECK(h[0][j] == Complex(1.0));
            CHECK(std::abs(h[1][j] - Complex(ts->point(j) - a)) <= 1e-12);
        }
    }
    const auto iv = TimeScale::real_interval(0.0, 2.0, 5);
    const auto h = hk_table(iv, 0.0, 1);
    for (std::size_t j = 0; j < iv->size(); ++j) CHECK(h[1][j] == Complex(iv->point(j)));
}

TEST_CASE("h_2 on Z matches direct double summation, both sides of the anchor") {
    const auto ts = unit_grid(-3.0, 8); // -3..4
    const std::size_t ia = ts->anchor_index(0.0);
    const auto h = hk_table(ts, 0.0, 2);

    // h_2(4, 0): sum of mu_i * h_1(t_i) over 0 <= t_i < 4.
    double direct = 0.0;
    for (std::size_t i = ia; i < ts->anchor_index(4.0); ++i) {
        direct += ts->graininess(i) * (ts->point(i) - 0.0);
    }
    CHECK(direct == 6.0);
    CHECK(h[2][ts->anchor_index(4.0)] == Complex(6.0));

    // Behind the anchor the integral flips orientation: h_2(-2, 0) = 3.
    CHECK(h[2][ts->anchor_index(-2.0)] == Complex(3.0));
    CHECK(h[1][ts->anchor_index(-2.0)] == Complex(-2.0));
}

TEST_CASE("h_k on real_interval is (t-a)^k / k!") {
    const auto iv = TimeScale::real_interval(0.0, 2.0, 5);
    const auto h = hk_table(iv, 0.0, 3);
    CHECK(h[3][4] == Complex(8.0 / 6.0)); // h_3(2, 0) = 4/3
    for (std::size_t j = 0; j < iv->size(); ++j) {
        const double t = iv->point(j);
        CHECK(std::abs(h[2][j] - Complex(t * t / 2.0)) <= 1e-15 * (1.0 + t * t));
    }
}

TEST_CASE("h_k(n,0) on Z equals binomial(n,k) exactly") {
    const auto ts = unit_grid(0.0, 13); // 0..12
    const auto h = hk_table(ts, 0.0, 6);
    for (int n = 0; n <= 12; ++n) {
        for (int k = 0; k <= 6; ++k) {
            CHECK(h[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] ==
                  Complex(binomial(n, k)));
        }
    }
}

TEST_CASE("hk_table matches the naive recursion on an irregular grid") {
    std::mt19937 rng(7101);
    std::uniform_real_distribution<double> step(0.1, 0.9);
    std::vector<double> pts(12);
    pts[0] = -1.0;
    for (std::size_t i = 1; i < pts.size(); ++i) pts[i] = pts[i - 1] + step(rng);
    const auto ts = TimeScale::grid(pts);
    const std::size_t ia = 4; // interior anchor exercises both orientations
    const auto h = hk_table(ts, ts->point(ia), 5);
    for (std::size_t k = 0; k <= 5; ++k) {
        for (std::size_t j = 0; j < ts->size(); ++j) {
            const double want = hk_direct(ts, ia, k, j);
            CHECK(std::abs(h[k][j] - Complex(want)) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("h_k vanishes at the anchor and h_0 is one, exactly") {
    const auto ts = TimeScale::grid({0.0, 0.3, 0.45, 1.0, 1.2, 2.0});
    const auto h = hk_table(ts, 1.0, 4);
    const std::size_t ia = ts->anchor_index(1.0);
    CHECK(h[0][ia] == Complex(1.0));
    for (std::size_t k = 1; k <= 4; ++k) {
        CHECK(h[k][ia].real() == 0.0);
        CHECK(h[k][ia].imag() == 0.0);
    }
    CHECK_THROWS_AS(hk_table(ts, 0.7, 2), Error); // not a grid point
}

TEST_CASE("delta derivative of h_k is h_{k-1}") {
    std::mt19937 rng(7102);
    std::uniform_real_distribution<double> step(0.05, 0.6);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> pts(14);
        pts[0] = 0.0;
        for (std::size_t i = 1; i < pts.size(); ++i) pts[i] = pts[i - 1] + step(rng);
        const auto ts = TimeScale::grid(pts);
        const auto h = hk_table(ts, 0.0, 5);
        for (std::size_t k = 1; k <= 5; ++k) {
            const auto d = delta_derivative(h[k]);
            for (std::size_t i = 0; i < d.defined; ++i) {
                CHECK(std::abs(d[i] - h[k - 1][i]) <=
                      1e-12 * std::max(1.0, std::abs(h[k - 1][i])));
            }
        }
    }
}

TEST_CASE("exponential special values on Z") {
    const auto ts = unit_grid(0.0, 21);
    const auto e = exp_lambda(ts, 1.0, 0.0);
    CHECK(e[0] == Complex(1.0)); // e(a, a)
    for (std::size_t j = 0; j <= 20; ++j) {
        CHECK(e[j] == Complex(std::ldexp(1.0, static_cast<int>(j)))); // 2^t
    }

    try {
        exp_lambda(ts, -1.0, 0.0);
        FAIL("expected NotRegressive");
    } catch (const Error& e1) {
        CHECK(e1.code() == errc::not_regressive);
        CHECK(e1.index() == 0);
    }
}

TEST_CASE("exponential behind the anchor is the reciprocal product") {
    const auto ts = unit_grid(-2.0, 5); // -2..2
    const auto e = exp_lambda(ts, 1.0, 0.0);
    CHECK(e[ts->anchor_index(0.0)] == Complex(1.0));
    CHECK(e[ts->anchor_index(-1.0)] == Complex(0.5));
    CHECK(e[ts->anchor_index(-2.0)] == Complex(0.25));
    CHECK(e[ts->anchor_index(2.0)] == Complex(4.0));
}

TEST_CASE("exp_lambda matches the naive product on irregular grids") {
    std::mt19937 rng(7103);
    std::uniform_real_distribution<double> step(0.1, 0.8);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> pts(11);
        pts[0] = 0.0;
        for (std::size_t i = 1; i < pts.size(); ++i) pts[i] = pts[i - 1] + step(rng);
        const auto ts = TimeScale::grid(pts);
        const Complex lambda(u(rng), u(rng));
        const std::size_t ia = 3;
        const auto e = exp_lambda(ts, lambda, ts->point(ia));
        for (std::size_t j = 0; j < ts->size(); ++j) {
            const Complex want = exp_direct(ts, lambda, ia, j);
            CHECK(std::abs(e[j] - want) <= 1e-13 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("exp_lambda on real_interval is exp(lambda (t-a))") {
    const auto iv = TimeScale::real_interval(0.0, 3.0, 7);
    const Complex lambda(0.5, -1.25);
    const auto e = exp_lambda(iv, lambda, 0.0);
    for (std::size_t j = 0; j < iv->size(); ++j) {
        const Complex want = std::exp(lambda * iv->point(j));
        CHECK(std::abs(e[j] - want) <= 1e-14 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("delta derivative of e_lambda is lambda * e_lambda") {
    const auto cases = {TimeScale::uniform(0.0, 0.3, 15), TimeScale::q_scale(1.3, 0.5, 12)};
    const Complex lambdas[] = {Complex(0.7), Complex(-0.4, 0.9), Complex(0.1, -0.2)};
    for (const auto& ts : cases) {
        for (const Complex lambda : lambdas) {
            const auto e = exp_lambda(ts, lambda, ts->point(0));
            const auto d = delta_derivative(e);
            for (std::size_t i = 0; i < d.defined; ++i) {
                const Complex want = lambda * e[i];
                CHECK(std::abs(d[i] - want) <= 1e-10 * std::max(1.0, std::abs(want)));
            }
        }
    }
}

TEST_CASE("exponential semigroup under circle-plus on a uniform scale") {
    const auto ts = TimeScale::uniform(0.0, 0.5, 12);
    const double mu = 0.5;
    const Complex l1(0.3, 0.4), l2(-0.2, 0.1);
    const auto e1 = exp_lambda(ts, l1, 0.0);
    const auto e2 = exp_lambda(ts, l2, 0.0);
    const auto e12 = exp_lambda(ts, circle_plus(l1, l2, mu), 0.0);
    for (std::size_t j = 0; j < ts->size(); ++j) {
        const Complex prod = e1[j] * e2[j];
        CHECK(std::abs(prod - e12[j]) <= 1e-10 * std::max(1.0, std::abs(prod)));
    }
}

TEST_CASE("circle_plus closed form") {
    CHECK(circle_plus(Complex(2.0, 1.0), Complex(-1.0, 0.5), 0.0) == Complex(1.0, 1.5));
    CHECK(circle_plus(Complex(-5.0), Complex(-1.0), 1.0) == Complex(-1.0)); // -6 + 5
    // ... which equals -2*alpha + mu*beta for alpha = 3, beta = 5, mu = 1.
    CHECK(circle_plus(Complex(-5.0), Complex(-1.0), 1.0) == Complex(-2.0 * 3.0 + 1.0 * 5.0));
    CHECK(circle_plus(Complex(0.7, -0.3), Complex(0.0), 0.8) == Complex(0.7, -0.3));
}
