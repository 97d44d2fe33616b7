#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tscalc {

/// Failure categories surfaced by the library.
enum class errc {
    non_increasing,
    too_short,
    index_out_of_range,
    unsupported_scale,
    anchor_not_on_scale,
    not_regressive,
    degenerate_roots,
    beta_zero,
    degree_too_small,
    scale_too_short,
    invalid_argument,
    parse_error,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
public:
    static constexpr std::size_t no_index = static_cast<std::size_t>(-1);

    Error(errc code, const std::string& message, std::size_t index = no_index)
        : std::runtime_error(message), code_(code), index_(index) {}

    errc code() const noexcept { return code_; }

    /// Grid index attached to the failure (e.g. the first non-regressive
    /// point); no_index when the failure is not tied to a point.
    std::size_t index() const noexcept { return index_; }

private:
    errc code_;
    std::size_t index_;
};

} // namespace tscalc
