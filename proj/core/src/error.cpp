#include "shapectl/error.hpp"

namespace shapectl {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidParams: return "invalid-params";
        case ErrorCode::Domain: return "domain";
        case ErrorCode::GridDomain: return "grid-domain";
        case ErrorCode::QuadratureFailure: return "quadrature-failure";
        case ErrorCode::NotFound: return "not-found";
        case ErrorCode::DegenerateTime: return "degenerate-time";
        case ErrorCode::ExpiryKink: return "expiry-kink";
        case ErrorCode::StepUnderflow: return "step-underflow";
        case ErrorCode::NoBracket: return "no-bracket";
        case ErrorCode::Instability: return "instability-detected";
    }
    return "unknown";
}

}  // namespace shapectl
