#pragma once

#include <stdexcept>

namespace beamsim {

/// An array geometry that violates a structural constraint (N < 2,
/// non-positive spacing or radius, ...).
class InvalidGeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was handed a geometry of the wrong kind, or data whose
/// channel count does not match the geometry.
class GeometryMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar argument outside its documented domain (step sizes, sample
/// rates, interpolator settings, mismatched signal pairs, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A lookup outside the represented range (frequency off a grid, band
/// beyond Nyquist, delay longer than the signal, ...).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed or unsupported file content.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure to read from or write to the filesystem.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace beamsim
