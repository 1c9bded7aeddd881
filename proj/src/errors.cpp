#include "mobius/errors.hpp"

namespace mobius {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotInvariant: return "NOT_INVARIANT";
        case ErrorCode::NoDomainFound: return "NO_DOMAIN_FOUND";
        case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
        case ErrorCode::Overflow: return "OVERFLOW";
        case ErrorCode::NoSignChange: return "NO_SIGN_CHANGE";
        case ErrorCode::ZeroMass: return "ZERO_MASS";
        case ErrorCode::InsufficientGrid: return "INSUFFICIENT_GRID";
        case ErrorCode::CertificateFailed: return "CERTIFICATE_FAILED";
        case ErrorCode::NoSharedFixedPoint: return "NO_SHARED_FIXED_POINT";
        case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    }
    return "UNKNOWN";
}

} // namespace mobius
