#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pickspace {

enum class ErrorKind {
    NotHermitian,
    NotFinite,
    NotPSD,
    NotContraction,
    SingularKernel,
    ZeroKernelEntry,
    DomainViolation,
    SpaceMismatch,
    NotPick,
    BetaMismatch,
    ZeroDelta,
    NotInRange,
    NotInvariant,
    NotIsometric,
    DimMismatch,
    SingularResolvent,
    NotNormalized,
    ConditionsViolated,
    SearchFailed,
    InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. `witness` carries the numeric evidence behind the
/// failure (a negative eigenvalue, a residual, a norm) when there is one.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, double witness = 0.0)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind), witness_(witness) {}

    ErrorKind kind() const noexcept { return kind_; }
    double witness() const noexcept { return witness_; }

private:
    ErrorKind kind_;
    double witness_;
};

} // namespace pickspace
