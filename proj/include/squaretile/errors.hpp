#pragma once

#include <stdexcept>
#include <string>

namespace squaretile {

enum class ErrorKind {
    RankDeficient,
    NotSublattice,
    NotConnected,
    BadBranching,
    NotReduced,
    InvolutionNotFound,
    SpinUndefined,
    BudgetExceeded,
    WrongDegree,
    Degenerate,
    Inadmissible,
    NonRationalTwist,
    NonGeneric,
    UnsupportedDegree,
    IntegralTwist,
    EaveBottom,
    PagodaViolation,
    ParityConflict,
    IoFailure,
    GcdPrecondition,
    NotAnEave,
    NotALighthouse,
    EvenTorsion,
    StartsAtSingularity,
    InvalidArgument,
};

const char* error_kind_name(ErrorKind k);

/** @brief Exception carrying a machine-readable error kind. */
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace squaretile
