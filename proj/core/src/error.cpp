#include "projdyn/error.hpp"

namespace projdyn {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::ChartSingular: return "ChartSingular";
        case ErrorKind::Degenerate: return "Degenerate";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::RootFindingFailure: return "RootFindingFailure";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::MassDefect: return "MassDefect";
        case ErrorKind::SmallDivisorOverflow: return "SmallDivisorOverflow";
        case ErrorKind::EscapedSiegelDisk: return "EscapedSiegelDisk";
        case ErrorKind::ConditionViolated: return "ConditionViolated";
        case ErrorKind::EscapedBall: return "EscapedBall";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

StepError::StepError(ErrorKind kind, std::size_t step, const std::string& message)
    : Error(kind, "step " + std::to_string(step) + ": " + message), step_(step) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace projdyn
