#pragma once

#include <stdexcept>
#include <string>

namespace brickwall {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// numerics
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

// schedule
class InvalidScheduleParams : public Error {
 public:
  using Error::Error;
};

// brick geometry
class InvalidBrickConfig : public Error {
 public:
  using Error::Error;
};
class LatentTooShort : public Error {
 public:
  using Error::Error;
};
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

// denoiser
class InvalidGpParams : public Error {
 public:
  using Error::Error;
};
class InvalidTimestep : public Error {
 public:
  using Error::Error;
};
class SegmentTooLong : public Error {
 public:
  using Error::Error;
};

// sampler
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};
class InvalidTimestepPair : public Error {
 public:
  using Error::Error;
};
class WindowExceeded : public Error {
 public:
  using Error::Error;
};
class InvalidOverlap : public Error {
 public:
  using Error::Error;
};

// analysis
class SizeMismatch : public Error {
 public:
  using Error::Error;
};

/// Request needs a capability the chosen code path does not have
/// (e.g. exact covariance propagation with eta > 0). CLI exit code 3.
class CapabilityError : public Error {
 public:
  using Error::Error;
};
class NonlinearDenoiser : public CapabilityError {
 public:
  using CapabilityError::CapabilityError;
};

// config
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace brickwall
