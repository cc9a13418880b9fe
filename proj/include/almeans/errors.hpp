// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ALMEANS_ERRORS_HPP_
#define ALMEANS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace almeans {

// Base class for every error the library raises on purpose. Callers that
// want a single catch site can catch this; the subclasses exist so tests
// and the CLI can tell input mistakes apart from numerical breakdowns.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- linear algebra -------------------------------------------------------

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Input matrix fails the relative asymmetry bound (1e-8).
class NotSymmetric : public Error {
 public:
  using Error::Error;
};

// Symmetric input has an eigenvalue below -1e-12 * lambda_max.
class NotPositiveSemidefinite : public Error {
 public:
  using Error::Error;
};

// The underlying eigensolver did not converge within its iteration cap.
class EigenFailure : public Error {
 public:
  using Error::Error;
};

// A spectral function was asked for a value outside its domain
// (zero eigenvalue with no declared value at 0, non-finite result, or a
// metric evaluated on a semidefinite matrix).
class DomainError : public Error {
 public:
  using Error::Error;
};

// First argument of a mean is singular and the representing function needs
// a positive argument; the caller must regularize (epsilon shift).
class SingularInput : public Error {
 public:
  using Error::Error;
};

// ---- means ----------------------------------------------------------------

// Scalar parameter outside its documented range, or a custom representing
// function failing the sanity grid.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Operation undefined for this mean (adjoint/weight of a trivial mean).
class Unsupported : public Error {
 public:
  using Error::Error;
};

// Declared weight disagrees with the finite-difference derivative at 1.
class InconsistentMean : public Error {
 public:
  using Error::Error;
};

// ---- stochastic matrices ---------------------------------------------------

// Eigenvalue-1 eigenspace has dimension > 1; no unique stationary vector.
class DegeneratePerron : public Error {
 public:
  using Error::Error;
};

// More than one eigenvalue on the unit circle; powers do not converge.
class NonPrimitive : public Error {
 public:
  using Error::Error;
};

// A weight vector has a nonpositive entry, so the mean is not dominated by
// a positive-coefficient affine combination.
class NotAffinelyDominated : public Error {
 public:
  using Error::Error;
};

// ---- iteration engine -------------------------------------------------------

// A trivial mean appears where the recursion requires non-trivial ones.
class InvalidTriple : public Error {
 public:
  using Error::Error;
};

// Mean family outside the convergence hypotheses (two or more means that are
// not strictly concave, with at least one that is).
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

// Input precondition (e.g. Loewner ordering) not met.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Estimated weight vector does not sum to 1 within tolerance.
class WeightEstimationFailure : public Error {
 public:
  using Error::Error;
};

// ---- verification -----------------------------------------------------------

// A filter pattern matched no registered property check.
class UnknownCheck : public Error {
 public:
  using Error::Error;
};

// ---- I/O ---------------------------------------------------------------------

// Structurally valid JSON that does not describe a valid job.
class JobParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace almeans

#endif  // ALMEANS_ERRORS_HPP_
