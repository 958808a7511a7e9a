#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace projdyn {

using cplx = std::complex<double>;

enum class ErrorKind {
    ZeroVector,
    ChartSingular,
    Degenerate,
    Unsupported,
    RootFindingFailure,
    DegreeMismatch,
    InvalidArgument,
    MassDefect,
    SmallDivisorOverflow,
    EscapedSiegelDisk,
    ConditionViolated,
    EscapedBall,
    ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above; the
/// CLI serializes the kind name verbatim into its JSON output.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    /// The message without the kind prefix that what() carries.
    const std::string& message() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
};

/// Raised by multi-step procedures; `step` is the zero-based index of the
/// step that failed.
class StepError : public Error {
public:
    StepError(ErrorKind kind, std::size_t step, const std::string& message);

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, const std::string& message) {
    if (!condition) fail(ErrorKind::InvalidArgument, message);
}

}  // namespace projdyn
