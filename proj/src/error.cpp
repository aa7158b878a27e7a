#include "arlimit/error.hpp"

#include <charconv>

namespace arlimit {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyInput: return "EMPTY_INPUT";
        case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
        case ErrorCode::NonStationary: return "NON_STATIONARY";
        case ErrorCode::ClusteredRoots: return "CLUSTERED_ROOTS";
        case ErrorCode::RealnessViolation: return "REALNESS_VIOLATION";
        case ErrorCode::OutsideAnnulus: return "OUTSIDE_ANNULUS";
        case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
        case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
        case ErrorCode::LagTooLarge: return "LAG_TOO_LARGE";
        case ErrorCode::LengthMismatch: return "LENGTH_MISMATCH";
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::OracleMismatch: return "ORACLE_MISMATCH";
    }
    return "UNKNOWN";
}

std::string format_number(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace arlimit
