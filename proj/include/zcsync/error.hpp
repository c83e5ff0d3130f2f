#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zcsync {

enum class ErrorCode {
    InvalidLength,
    InvalidRoot,
    InvalidTaps,
    LengthExceedsPeriod,
    LengthMismatch,
    ZeroShift,
    KappaOutsideWindow,
    WindowTooLarge,
    NegativeArgument,
    OffsetNotInWindow,
    KappaExceedsCp,
    InvalidScenario,
    InvalidConfig,
    EmptyCandidates,
    NumericFailure,
};

std::string_view to_string(ErrorCode code);

// Precondition violations raised by every module. `parameter` names the
// offending input so front ends can report it.
class Error : public std::invalid_argument {
public:
    Error(ErrorCode code, std::string parameter, const std::string& message)
        : std::invalid_argument(message), code_(code), parameter_(std::move(parameter)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& parameter() const noexcept { return parameter_; }

private:
    ErrorCode code_;
    std::string parameter_;
};

} // namespace zcsync
