#pragma once

#include <stdexcept>
#include <string>

namespace skx {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation of a rational function at a root of its denominator.
struct pole_error : error {
  using error::error;
};

// A precondition documented on the public surface was violated by the caller.
struct contract_violation : error {
  using error::error;
};

// The configured work budget ran out before the computation finished.
struct budget_exhausted : error {
  using error::error;
};

// A size/dimension cap made the request infeasible (e.g. too many spins for
// exact enumeration, too many quadrature dimensions).
struct resource_error : error {
  using error::error;
};

}  // namespace skx
