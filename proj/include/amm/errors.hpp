#pragma once

#include <stdexcept>
#include <string>

namespace amm {

/// Base of every error raised by the library. `kind()` is the stable name
/// used in structured error output.
class AmmError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "AmmError"; }
};

#define AMM_DEFINE_ERROR(Name)                                      \
    class Name : public AmmError {                                  \
    public:                                                         \
        using AmmError::AmmError;                                   \
        const char* kind() const noexcept override { return #Name; } \
    };

AMM_DEFINE_ERROR(DomainError)
AMM_DEFINE_ERROR(SingularSlope)
AMM_DEFINE_ERROR(InsufficientLiquidity)
AMM_DEFINE_ERROR(NoConvergence)
AMM_DEFINE_ERROR(GeometryError)
AMM_DEFINE_ERROR(NegativeReserveRejected)
AMM_DEFINE_ERROR(InvariantViolation)
AMM_DEFINE_ERROR(StalePlan)
AMM_DEFINE_ERROR(InfeasibleAttack)
AMM_DEFINE_ERROR(ParseError)

#undef AMM_DEFINE_ERROR

}  // namespace amm
