#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arlimit {

/// Stable error categories. The CLI maps each one onto a fixed string code.
enum class ErrorCode {
    EmptyInput,
    InvalidArgument,
    NonStationary,
    ClusteredRoots,
    RealnessViolation,
    OutsideAnnulus,
    BudgetExceeded,
    NoConvergence,
    LagTooLarge,
    LengthMismatch,
    ParseError,
    OracleMismatch,
};

/// Machine-readable name, e.g. "NON_STATIONARY".
std::string_view error_code_name(ErrorCode code) noexcept;

/// Shortest decimal that round-trips, for numbers quoted in messages.
std::string format_number(double x);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace arlimit
