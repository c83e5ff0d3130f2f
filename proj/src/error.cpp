#include "zcsync/error.hpp"

namespace zcsync {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidLength: return "invalid-length";
    case ErrorCode::InvalidRoot: return "invalid-root";
    case ErrorCode::InvalidTaps: return "invalid-taps";
    case ErrorCode::LengthExceedsPeriod: return "length-exceeds-period";
    case ErrorCode::LengthMismatch: return "length-mismatch";
    case ErrorCode::ZeroShift: return "zero-shift";
    case ErrorCode::KappaOutsideWindow: return "kappa-outside-window";
    case ErrorCode::WindowTooLarge: return "window-too-large";
    case ErrorCode::NegativeArgument: return "negative-argument";
    case ErrorCode::OffsetNotInWindow: return "offset-not-in-window";
    case ErrorCode::KappaExceedsCp: return "kappa-exceeds-cp";
    case ErrorCode::InvalidScenario: return "invalid-scenario";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::EmptyCandidates: return "empty-candidates";
    case ErrorCode::NumericFailure: return "numeric-failure";
    }
    return "unknown";
}

} // namespace zcsync
