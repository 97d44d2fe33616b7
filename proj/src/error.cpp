#include "tscalc/error.hpp"

namespace tscalc {

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::non_increasing: return "NonIncreasing";
        case errc::too_short: return "TooShort";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::unsupported_scale: return "UnsupportedScale";
        case errc::anchor_not_on_scale: return "AnchorNotOnScale";
        case errc::not_regressive: return "NotRegressive";
        case errc::degenerate_roots: return "DegenerateRoots";
        case errc::beta_zero: return "BetaZero";
        case errc::degree_too_small: return "DegreeTooSmall";
        case errc::scale_too_short: return "ScaleTooShort";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

} // namespace tscalc
