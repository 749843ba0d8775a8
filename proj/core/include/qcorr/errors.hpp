#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct InvalidState : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct SeparationTooSmall : Error { using Error::Error; };
struct StepSizeTooLarge : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct UnknownColumn : Error { using Error::Error; };

}  // namespace qcorr
