#pragma once

#include <stdexcept>
#include <string>

namespace demoire {

// All operations report contract violations by throwing one of these.
// Numerically total operations (pure pixel math on valid inputs) never throw.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct OddDimensions : Error {
  using Error::Error;
};

struct SingularHomography : Error {
  using Error::Error;
};

struct NonPositiveSigma : Error {
  using Error::Error;
};

struct NonPositiveQuantFactor : Error {
  using Error::Error;
};

struct ImageTooSmall : Error {
  using Error::Error;
};

struct RatioOutOfRange : Error {
  using Error::Error;
};

struct BadThresholds : Error {
  using Error::Error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

struct NonFiniteLoss : Error {
  using Error::Error;
};

struct UnknownOp : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct CheckpointMismatch : Error {
  using Error::Error;
};

}  // namespace demoire
