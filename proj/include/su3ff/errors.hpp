#pragma once

#include <stdexcept>
#include <string>

namespace su3ff {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A kernel denominator fell below the pole guard; the message names the
// offending factor and argument pair.
struct PoleError : Error {
  using Error::Error;
};

// Set cardinalities incompatible with the requested operation.
struct SizeMismatch : Error {
  using Error::Error;
};

// Input exceeds a hard size cap (partition sums, lattice length).
struct SizeLimit : Error {
  using Error::Error;
};

// A domain type invariant was violated at construction.
struct ConstructionError : Error {
  using Error::Error;
};

// Logarithm of a vanishing quantity.
struct ZeroArgument : Error {
  using Error::Error;
};

// Newton iteration or twist continuation failed to converge.
struct NoConvergence : Error {
  using Error::Error;
};

// The Bethe Jacobian is numerically singular.
struct SingularJacobian : Error {
  using Error::Error;
};

// Every component of the row vector used to pick the modified row vanished:
// the two states share all roots and the off-diagonal formula does not apply.
struct AllZero : Error {
  using Error::Error;
};

// A state id referenced by the CLI was not found in the input record file.
struct StateNotFound : Error {
  using Error::Error;
};

// Lattice site index outside 1..L.
struct SiteOutOfRange : Error {
  using Error::Error;
};

// Configuration file failed schema validation; the message carries the path.
struct ConfigError : Error {
  using Error::Error;
};

// No transfer-matrix eigenvalue matched the state at the probe points.
struct NoMatch : Error {
  using Error::Error;
};

// More than one eigenvalue matched at every probe point.
struct DegenerateMatch : Error {
  using Error::Error;
};

}  // namespace su3ff
