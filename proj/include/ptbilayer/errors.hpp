#pragma once

#include <stdexcept>
#include <string>

namespace ptbilayer {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A22 of the transfer matrix vanished: the structure sits on a lasing pole.
class SingularTransfer : public Error {
 public:
  using Error::Error;
};

/// Denominator of the effective-slab amplitudes vanished.
class LasingPole : public Error {
 public:
  using Error::Error;
};

/// Bloch phase outside the long-wavelength window where the principal
/// arccos branch can be trusted.
class BranchAmbiguity : public Error {
 public:
  using Error::Error;
};

/// Bisection bracket does not straddle the threshold (CLI exit code 3).
class NoSignChange : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed, e.g. the commutator sum rule
/// (CLI exit code 4).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Mandel parameter requested for a fully opaque, noiseless channel.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

}  // namespace ptbilayer
