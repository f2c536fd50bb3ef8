#pragma once

#include <stdexcept>
#include <string>

namespace murm {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside the documented domain of a function.
struct DomainError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct BranchError : Error { using Error::Error; };
struct NotAGeneratingSet : Error { using Error::Error; };
struct OrderMismatch : Error { using Error::Error; };
struct InvalidResidue : Error { using Error::Error; };
struct EmptyFamily : Error { using Error::Error; };
struct NotEntire : Error { using Error::Error; };
struct QuadratureSpecInvalid : Error { using Error::Error; };
struct QuadratureNonConvergence : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace murm
