#pragma once

#include <stdexcept>
#include <string>

namespace swdecay {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument values (non-positive time where t > 0 is required, etc.).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Branch-coefficient decomposition requested within eps of a degeneracy
// 2|Omega cos xi| = gamma, where the eigenvector basis collapses.
class BranchDegenerate : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature hit its depth limit before reaching the tolerance.
class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

// Fourier grid doubling hit its size limit before amplitudes stabilized.
class GridNotConverged : public Error {
 public:
  using Error::Error;
};

// Mode sum still carried tail weight at the order cap.
class TailNotConverged : public Error {
 public:
  using Error::Error;
};

// Adaptive ODE step shrank below the representable resolution.
class StepSizeUnderflow : public Error {
 public:
  using Error::Error;
};

// Ladder kept leaking into the boundary shell at the truncation cap.
class TruncationExceeded : public Error {
 public:
  using Error::Error;
};

// Fewer points than a fit needs inside the window.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// Log-log fit fed a value <= 0.
class NonPositiveValues : public Error {
 public:
  using Error::Error;
};

// Oscillation metrics need at least three local maxima in the window.
class TooFewPeaks : public Error {
 public:
  using Error::Error;
};

// File could not be opened/read/written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed or contradictory scenario configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace swdecay
