#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "tscalc/error.hpp"

namespace tscalc {

using Complex = std::complex<double>;

enum class ScaleKind { grid, real_interval, uniform, q_scale };

const char* scale_kind_name(ScaleKind kind) noexcept;

class TimeScale;
using TimeScalePtr = std::shared_ptr<const TimeScale>;

/// A concrete time scale: a finite strictly increasing set of points.
///
/// Discrete kinds (grid, uniform, q_scale) carry isolated points with
/// positive graininess between neighbours. real_interval is treated
/// analytically everywhere; its points are sample locations only and its
/// graininess is identically zero.
///
/// Instances are immutable after construction and safe to share across
/// threads.
class TimeScale {
public:
    /// Explicit grid of isolated points. Requires >= 3 strictly
    /// increasing values.
    static TimeScalePtr grid(std::vector<double> points);

    /// Uniform grid: point j = start + j*step (integer multiplication,
    /// not repeated addition).
    static TimeScalePtr uniform(double start, double step, std::size_t count);

    /// Quantum scale: point j = first * q^j with q > 1, first > 0.
    static TimeScalePtr q_scale(double q, double first, std::size_t count);

    /// Continuous interval [a, b] with equally spaced sample points.
    static TimeScalePtr real_interval(double a, double b, std::size_t samples);

    ScaleKind kind() const noexcept { return kind_; }
    bool discrete() const noexcept { return kind_ != ScaleKind::real_interval; }

    std::size_t size() const noexcept { return points_.size(); }
    double point(std::size_t i) const { return points_.at(i); }
    const std::vector<double>& points() const noexcept { return points_; }

    /// Graininess mu(t_i) = sigma(t_i) - t_i. Zero on real_interval;
    /// undefined (IndexOutOfRange) at the last point of a discrete scale.
    double graininess(std::size_t i) const;

    /// Index of the grid point equal to `a` (within a tight relative
    /// tolerance). On real_interval, `a` must be the left endpoint.
    /// Throws AnchorNotOnScale otherwise.
    std::size_t anchor_index(double a) const;

private:
    TimeScale(ScaleKind kind, std::vector<double> points);

    ScaleKind kind_;
    std::vector<double> points_;
};

/// Scalar complex values attached to the points of a time scale.
/// Only the first `defined` entries are meaningful; the tail (e.g. the
/// last point of a delta derivative) is flagged undefined and filled
/// with NaN.
struct SampledFunction {
    TimeScalePtr scale;
    std::vector<Complex> values;
    std::size_t defined = 0;

    SampledFunction() = default;
    SampledFunction(TimeScalePtr ts, std::vector<Complex> vals);

    std::size_t size() const noexcept { return values.size(); }
    bool is_defined(std::size_t i) const noexcept { return i < defined; }
    Complex operator[](std::size_t i) const { return values[i]; }

    /// max |values[i]| over the defined prefix.
    double max_abs() const noexcept;

    /// Constant function on every point of `ts`.
    static SampledFunction constant(const TimeScalePtr& ts, Complex value);

    /// Pointwise evaluation of `fn` at every point of `ts`.
    static SampledFunction sample(const TimeScalePtr& ts,
                                  const std::function<Complex(double)>& fn);
};

/// Forward-difference quotient (f(sigma(t)) - f(t)) / mu(t) on a discrete
/// scale. The result loses one defined entry at the right end. Rejects
/// real_interval (UnsupportedScale): analytic functions are
/// differentiated analytically by their modules instead.
SampledFunction delta_derivative(const SampledFunction& f);

/// Riemann delta sum  sum_{i=from}^{to-1} mu_i * f_i  on a discrete
/// scale; zero when from == to. Summation is left to right.
Complex delta_integral(const SampledFunction& f, std::size_t from, std::size_t to);

} // namespace tscalc
