#pragma once

#include <stdexcept>
#include <string>

namespace dimerlab {

// Bad input shape or value: unparseable lattice spec, non-increasing size
// list, a fit whose design cannot identify the leading coefficient.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Request exceeds a resource guard or a table's known range.  The message
// names the offending bound.
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No admissible configuration exists for the requested density.
struct infeasible_error : capacity_error {
  using capacity_error::capacity_error;
};

}  // namespace dimerlab
