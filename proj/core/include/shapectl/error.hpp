#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shapectl {

enum class ErrorCode {
    InvalidParams,
    Domain,
    GridDomain,
    QuadratureFailure,
    NotFound,
    DegenerateTime,
    ExpiryKink,
    StepUnderflow,
    NoBracket,
    Instability,
};

/// Stable kebab-case name used in machine-readable diagnostics.
std::string_view to_string(ErrorCode code) noexcept;

/// Base error for everything the library throws.
///
/// `field()` names the offending input when the error comes from validation,
/// and is empty otherwise.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string field = {})
        : std::runtime_error(message), code_(code), field_(std::move(field)) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    ErrorCode code_;
    std::string field_;
};

/// Raised by the calibrator when the requested Delta shift is out of reach.
class NoBracketError : public Error {
public:
    NoBracketError(const std::string& message, double max_achievable)
        : Error(ErrorCode::NoBracket, message), max_achievable_(max_achievable) {}

    /// Largest shift magnitude (signed like epsilon) seen on the search interval.
    [[nodiscard]] double max_achievable() const noexcept { return max_achievable_; }

private:
    double max_achievable_;
};

}  // namespace shapectl
