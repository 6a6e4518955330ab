#pragma once

#include <stdexcept>
#include <string>

namespace arthur {

enum class Err {
    NotAnInvolution,
    SigmaNotRootPermutation,
    PairingNotTwo,
    ReflectionEscapesRootSet,
    NonReducedSystem,
    WeylCapExceeded,
    ArrangementCapExceeded,
    SimpleTransitivityFailure,
    IrregularCharacter,
    RecursionInconsistent,
    MinusOneNotInWeylGroup,
    Lambda0NotInDualCone,
    IdentityViolated,
    IrregularElement,
    DegenerateProjection,
    NotDominant,
    NotIntegral,
    NonIntegralQ,
    ParseError,
    ValidationError,
    InternalError,
};

const char* err_name(Err e);

class ArthurError : public std::runtime_error {
public:
    ArthurError(Err kind, const std::string& msg)
        : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}

    Err kind() const { return kind_; }

private:
    Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) {
    throw ArthurError(kind, msg);
}

}  // namespace arthur
