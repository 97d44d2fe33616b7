#include "tscalc/timescale.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace tscalc {

namespace {

constexpr std::size_t kMinPoints = 3;

void require_min_points(std::size_t n, const char* what) {
    if (n < kMinPoints) {
        throw Error(errc::too_short,
                    std::string(what) + ": need at least 3 points, got " + std::to_string(n));
    }
}

} // namespace

const char* scale_kind_name(ScaleKind kind) noexcept {
    switch (kind) {
        case ScaleKind::grid: return "grid";
        case ScaleKind::real_interval: return "real_interval";
        case ScaleKind::uniform: return "uniform";
        case ScaleKind::q_scale: return "q_scale";
    }
    return "?";
}

TimeScale::TimeScale(ScaleKind kind, std::vector<double> points)
    : kind_(kind), points_(std::move(points)) {}

TimeScalePtr TimeScale::grid(std::vector<double> points) {
    require_min_points(points.size(), "grid");
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i] < points[i + 1])) {
            throw Error(errc::non_increasing,
                        "grid: points must be strictly increasing (violated between index " +
                            std::to_string(i) + " and " + std::to_string(i + 1) + ")",
                        i);
        }
    }
    return TimeScalePtr(new TimeScale(ScaleKind::grid, std::move(points)));
}

TimeScalePtr TimeScale::uniform(double start, double step, std::size_t count) {
    require_min_points(count, "uniform");
    if (!(step > 0.0)) {
        throw Error(errc::invalid_argument, "uniform: step must be > 0");
    }
    std::vector<double> pts(count);
    for (std::size_t j = 0; j < count; ++j) {
        pts[j] = start + static_cast<double>(j) * step;
    }
    return TimeScalePtr(new TimeScale(ScaleKind::uniform, std::move(pts)));
}

TimeScalePtr TimeScale::q_scale(double q, double first, std::size_t count) {
    require_min_points(count, "q_scale");
    if (!(q > 1.0)) {
        throw Error(errc::invalid_argument, "q_scale: q must be > 1");
    }
    if (!(first > 0.0)) {
        throw Error(errc::invalid_argument, "q_scale: first point must be > 0");
    }
    std::vector<double> pts(count);
    for (std::size_t j = 0; j < count; ++j) {
        pts[j] = first * std::pow(q, static_cast<double>(j));
    }
    return TimeScalePtr(new TimeScale(ScaleKind::q_scale, std::move(pts)));
}

TimeScalePtr TimeScale::real_interval(double a, double b, std::size_t samples) {
    require_min_points(samples, "real_interval");
    if (!(b > a)) {
        throw Error(errc::invalid_argument, "real_interval: b must be > a");
    }
    std::vector<double> pts(samples);
    const double h = (b - a) / static_cast<double>(samples - 1);
    for (std::size_t j = 0; j < samples; ++j) {
        pts[j] = a + static_cast<double>(j) * h;
    }
    pts.back() = b; // keep the right endpoint exact
    return TimeScalePtr(new TimeScale(ScaleKind::real_interval, std::move(pts)));
}

double TimeScale::graininess(std::size_t i) const {
    if (kind_ == ScaleKind::real_interval) {
        if (i >= points_.size()) {
            throw Error(errc::index_out_of_range,
                        "graininess: index " + std::to_string(i) + " out of range", i);
        }
        return 0.0; // right-dense points
    }
    if (i + 1 >= points_.size()) {
        throw Error(errc::index_out_of_range,
                    "graininess: sigma undefined at the last point of a discrete scale (index " +
                        std::to_string(i) + ")",
                    i);
    }
    return points_[i + 1] - points_[i];
}

std::size_t TimeScale::anchor_index(double a) const {
    const double tol = 1e-12 * std::max(1.0, std::abs(a));
    if (kind_ == ScaleKind::real_interval) {
        if (std::abs(points_.front() - a) <= tol) return 0;
        throw Error(errc::anchor_not_on_scale,
                    "anchor " + std::to_string(a) +
                        " must be the left endpoint of the real interval");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (std::abs(points_[i] - a) <= tol) return i;
    }
    throw Error(errc::anchor_not_on_scale,
                "anchor " + std::to_string(a) + " does not match any grid point");
}

SampledFunction::SampledFunction(TimeScalePtr ts, std::vector<Complex> vals)
    : scale(std::move(ts)), values(std::move(vals)), defined(values.size()) {
    if (!scale || values.size() != scale->size()) {
        throw Error(errc::invalid_argument,
                    "SampledFunction: values length must equal the number of scale points");
    }
}

double SampledFunction::max_abs() const noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < defined; ++i) m = std::max(m, std::abs(values[i]));
    return m;
}

SampledFunction SampledFunction::constant(const TimeScalePtr& ts, Complex value) {
    return SampledFunction(ts, std::vector<Complex>(ts->size(), value));
}

SampledFunction SampledFunction::sample(const TimeScalePtr& ts,
                                        const std::function<Complex(double)>& fn) {
    std::vector<Complex> vals(ts->size());
    for (std::size_t i = 0; i < ts->size(); ++i) vals[i] = fn(ts->point(i));
    return SampledFunction(ts, std::move(vals));
}

SampledFunction delta_derivative(const SampledFunction& f) {
    const TimeScalePtr& ts = f.scale;
    if (!ts->discrete()) {
        throw Error(errc::unsupported_scale,
                    "delta_derivative: real_interval functions differentiate analytically; "
                    "sample differencing is not supported");
    }
    if (f.defined < 2) {
        throw Error(errc::too_short, "delta_derivative: need at least 2 defined values");
    }
    SampledFunction out;
    out.scale = ts;
    out.values.assign(ts->size(), Complex(std::numeric_limits<double>::quiet_NaN(),
                                          std::numeric_limits<double>::quiet_NaN()));
    out.defined = f.defined - 1;
    for (std::size_t i = 0; i < out.defined; ++i) {
        out.values[i] = (f.values[i + 1] - f.values[i]) / ts->graininess(i);
    }
    return out;
}

Complex delta_integral(const SampledFunction& f, std::size_t from, std::size_t to) {
    const TimeScalePtr& ts = f.scale;
    if (!ts->discrete()) {
        throw Error(errc::unsupported_scale, "delta_integral: discrete scales only");
    }
    const std::size_t n = ts->size();
    if (from > to || to > n - 1) {
        throw Error(errc::index_out_of_range,
                    "delta_integral: need from <= to <= " + std::to_string(n - 1));
    }
    if (to > from && f.defined < to) {
        throw Error(errc::index_out_of_range,
                    "delta_integral: integrand undefined on [from, to)");
    }
    Complex acc = 0.0;
    for (std::size_t i = from; i < to; ++i) {
        acc += ts->graininess(i) * f.values[i];
    }
    return acc;
}

} // namespace tscalc
