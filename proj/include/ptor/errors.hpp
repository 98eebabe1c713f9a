#pragma once

#include <stdexcept>
#include <string>

namespace ptor {

/// Base class for all toolkit errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A field contains non-finite values or has inconsistent shape.
struct invalid_field_error : error {
  using error::error;
};

/// Pointwise domain violation (e.g. metric not positive definite);
/// carries the offending node when known.
struct domain_error : error {
  domain_error(const std::string& msg, int node = -1) : error(msg), node(node) {}
  int node;
};

/// Orientation-reversing torus map rejected.
struct orientation_error : error {
  using error::error;
};

/// Malformed binary field file; offset points at the first bad byte.
struct parse_error : error {
  parse_error(const std::string& msg, long offset) : error(msg), offset(offset) {}
  long offset;
};

/// The requested PDE has no solution (e.g. vanishing cubic term on the torus).
struct no_solution_error : error {
  using error::error;
};

/// Newton iteration failed to converge; message carries iterate diagnostics.
struct convergence_error : error {
  using error::error;
};

}  // namespace ptor
