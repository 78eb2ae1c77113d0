#pragma once

#include <stdexcept>
#include <string>

namespace tgp {

// Every failure the library can report. CLI exit codes are derived from
// these: usage/validation problems map to 2, resource limits to 3.
enum class ErrorCode {
    NotSimple,
    NotSymmetric,
    NotRegular,
    NotBipartite,
    InfeasibleDegree,
    RetryBudgetExceeded,
    DimensionCapExceeded,
    CapExceeded,
    BudgetExceeded,
    LengthMismatch,
    IndexOutOfRange,
    InvalidEntry,
    SizeMismatch,
    DegenerateSpectrum,
    PremiseNotMet,
    ConvergenceFailure,
    ParseError,
    InvalidArgument,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotSimple: return "NotSimple";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotRegular: return "NotRegular";
        case ErrorCode::NotBipartite: return "NotBipartite";
        case ErrorCode::InfeasibleDegree: return "InfeasibleDegree";
        case ErrorCode::RetryBudgetExceeded: return "RetryBudgetExceeded";
        case ErrorCode::DimensionCapExceeded: return "DimensionCapExceeded";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InvalidEntry: return "InvalidEntry";
        case ErrorCode::SizeMismatch: return "SizeMismatch";
        case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
        case ErrorCode::PremiseNotMet: return "PremiseNotMet";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

    // true for errors caused by resource limits rather than bad input
    bool is_budget() const {
        return code_ == ErrorCode::DimensionCapExceeded || code_ == ErrorCode::CapExceeded ||
               code_ == ErrorCode::BudgetExceeded || code_ == ErrorCode::RetryBudgetExceeded;
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace tgp
