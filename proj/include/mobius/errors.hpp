#pragma once

#include <stdexcept>
#include <string>

namespace mobius {

enum class ErrorCode {
    NotInvariant,
    NoDomainFound,
    BudgetExceeded,
    Overflow,
    NoSignChange,
    ZeroMass,
    InsufficientGrid,
    CertificateFailed,
    NoSharedFixedPoint,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

/// Typed error carrying an optional offender (map index, certificate step, ...)
/// and a witness value (angle, budget count, ...) for actionable messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, long index = -1, double witness = 0.0)
        : std::runtime_error(std::move(message)), code_(code), index_(index), witness_(witness) {}

    ErrorCode code() const { return code_; }
    long index() const { return index_; }
    double witness() const { return witness_; }

private:
    ErrorCode code_;
    long index_;
    double witness_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message, long index = -1,
                               double witness = 0.0) {
    throw Error(code, std::string(error_code_name(code)) + ": " + message, index, witness);
}

} // namespace mobius
