#pragma once

#include <stdexcept>
#include <string>

namespace mns {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error { using Error::Error; };
struct NotDiscPreserving : Error { using Error::Error; };
struct OrientationReversing : Error { using Error::Error; };
struct IsRotation : Error { using Error::Error; };
struct EmptyArcSet : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct DepthCapExceeded : Error { using Error::Error; };
struct EmptyRefinedSet : Error { using Error::Error; };
struct IllegalPrefix : Error { using Error::Error; };
struct ParamOutOfRange : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// Carries the decoder state at the point of failure.
struct NoLegalDigit : Error {
    NoLegalDigit(const std::string& what, std::size_t position, double angle)
        : Error(what), position(position), angle(angle) {}
    std::size_t position;
    double angle;
};

} // namespace mns
