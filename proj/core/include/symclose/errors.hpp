#pragma once

#include <stdexcept>
#include <string>

namespace symclose {

/// Base class for all symclose-specific failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operands live in different ambient dimensions.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// Ambient or subspace dimension outside the supported range.
struct BadDimension : Error {
  using Error::Error;
};

/// Vector expected to be unit norm is not.
struct NotUnit : Error {
  using Error::Error;
};

/// Principal angles requested against a zero-dimensional subspace.
struct ZeroDimensional : Error {
  using Error::Error;
};

/// Pointwise stabilizer of H in SO(n) is trivial (dim H > n-2).
struct TrivialStabilizer : Error {
  using Error::Error;
};

/// Word letter does not index a factor.
struct IndexOutOfRange : Error {
  using Error::Error;
};

/// Closure enumeration cap below 1.
struct InvalidCap : Error {
  using Error::Error;
};

/// Rational cosine outside [-1, 1].
struct OutOfRange : Error {
  using Error::Error;
};

/// Integer-relation search below the minimum working precision.
struct PrecisionTooLow : Error {
  using Error::Error;
};

/// Family dimensions contradict the requested evaluation mode.
struct ModeMismatch : Error {
  using Error::Error;
};

/// Counterexample block dimensions overflow the ambient space.
struct BadPartition : Error {
  using Error::Error;
};

/// Orbit sampling invoked with no generators.
struct EmptyGenerators : Error {
  using Error::Error;
};

/// Covering radius requested on a single-point target.
struct DegenerateTarget : Error {
  using Error::Error;
};

/// Invariance check invoked with an empty point set.
struct EmptySet : Error {
  using Error::Error;
};

/// Extension experiment preconditions do not hold; names the failing clause.
struct HypothesisViolated : Error {
  using Error::Error;
};

/// Config file could not be parsed; message carries field diagnostics.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace symclose
