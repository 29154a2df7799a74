// Error taxonomy. Every throw in the library uses one of these; all derive
// from rkhs::Error so callers can catch the whole family at once.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rkhs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// point outside a domain, or an argument outside an operation's range
class DomainError : public Error {
 public:
  using Error::Error;
};

// dimension mismatch between points, maps, polynomials or matrices
class ShapeError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf produced, or an iteration failed to converge numerically
class NumericalError : public Error {
 public:
  using Error::Error;
};

// rejection sampler exceeded its attempt budget
class SamplerExhausted : public Error {
 public:
  using Error::Error;
};

// a power base left the right half plane required by the principal branch
class BranchError : public Error {
 public:
  using Error::Error;
};

// kernel denominator vanished (modulus below the pole guard)
class SingularError : public Error {
 public:
  using Error::Error;
};

// evaluation requested too close to the zero set of the map's Jacobian
class NearSingularError : public Error {
 public:
  using Error::Error;
};

// series arguments outside the guarded convergence region
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// series degree cap above the supported maximum
class CapError : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class NotInvariant : public Error {
 public:
  using Error::Error;
};

class NotAntiInvariant : public Error {
 public:
  using Error::Error;
};

class UnsupportedSpace : public Error {
 public:
  using Error::Error;
};

class SpectrumOutsideDomain : public Error {
 public:
  using Error::Error;
};

// the positivity hypothesis of the operator inequality failed
class HypothesisFailed : public Error {
 public:
  using Error::Error;
};

// too many skipped samples for the campaign verdict to mean anything
class CampaignDegenerate : public Error {
 public:
  using Error::Error;
};

// text input rejected; position is the byte offset of the offending token
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)),
        position(position) {}
  std::size_t position;
};

}  // namespace rkhs
