#pragma once

#include <stdexcept>
#include <string>

namespace peakon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Combined atom count of a BL-distance problem exceeds the solver cap.
class AtomCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Two measures that must carry equal mass do not.
class MassMismatch : public Error {
 public:
  using Error::Error;
};

/// Positions not strictly increasing, non-positive momenta, or size mismatch.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// The adaptive integrator hit its step-halving limit.
class StepRejected : public Error {
 public:
  using Error::Error;
};

/// A fixed step produced a state outside the admissible domain.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

class DegenerateSupport : public Error {
 public:
  using Error::Error;
};

/// The trajectory does not span the time support of a test function.
class SupportNotCovered : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace peakon
