#pragma once

#include <stdexcept>

namespace cstarfix {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidTolerance : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NormNotLessThanOne : Error { using Error::Error; };
struct MaxTermsExceeded : Error { using Error::Error; };
struct NonPositiveK : Error { using Error::Error; };
struct GridTooSmall : Error { using Error::Error; };
struct TraceTooShort : Error { using Error::Error; };
struct PointMismatch : Error { using Error::Error; };
struct NormTooLarge : Error { using Error::Error; };
struct BadCoefficient : Error { using Error::Error; };
struct BadBound : Error { using Error::Error; };
struct BadCertificate : Error { using Error::Error; };
struct NoSection : Error { using Error::Error; };
struct NotACoincidencePoint : Error { using Error::Error; };
struct NonFiniteInput : Error { using Error::Error; };
struct InvalidKernel : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace cstarfix
