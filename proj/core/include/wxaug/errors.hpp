#pragma once

#include <stdexcept>
#include <string>

namespace wxaug {

/// Root of every error this library throws on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Frame width or height of zero (or otherwise unusable geometry).
class InvalidDimensionError : public Error {
public:
  using Error::Error;
};

/// A numeric knob outside its documented range (k_dim, k_droplet, ...).
class InvalidParameterError : public Error {
public:
  using Error::Error;
};

/// A DropletField applied to a frame with different dimensions.
class FieldMismatchError : public Error {
public:
  using Error::Error;
};

/// Structurally malformed input data (files, records, mixed groups).
class InvalidInputError : public Error {
public:
  using Error::Error;
};

/// Input that is well-formed but internally contradictory (e.g. more
/// true positives than ground-truth boxes).
class InconsistentInputError : public Error {
public:
  using Error::Error;
};

/// Metric requested over a domain where it is undefined (no ground truth).
class UndefinedMetricError : public Error {
public:
  using Error::Error;
};

/// Scene generation could not place all objects within the retry budget.
class PlacementError : public Error {
public:
  using Error::Error;
};

/// Generic parse failure for text or binary formats.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Wrong leading magic bytes (PPM "P6", wire "WXA1").
class MagicError : public ParseError {
public:
  using ParseError::ParseError;
};

/// PPM maxval other than 255.
class MaxvalError : public ParseError {
public:
  using ParseError::ParseError;
};

/// Declared payload longer than the bytes actually present.
class TruncatedError : public ParseError {
public:
  using ParseError::ParseError;
};

/// Wire frame dimensions above the protocol limit.
class OversizedError : public ParseError {
public:
  using ParseError::ParseError;
};

/// Filesystem / OS level failure.
class IoError : public Error {
public:
  using Error::Error;
};

/// An external detector process failed; carries its captured stderr.
class DetectorError : public Error {
public:
  explicit DetectorError(const std::string& message, std::string stderr_text = {})
      : Error(message), stderr_(std::move(stderr_text)) {}

  const std::string& captured_stderr() const noexcept { return stderr_; }

private:
  std::string stderr_;
};

}  // namespace wxaug
