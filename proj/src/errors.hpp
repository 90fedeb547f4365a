#pragma once

#include <stdexcept>
#include <string>

namespace rarecert {

// Base class for every error this library raises.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid argument value (NaN, out-of-range probability, non-positive shape...).
struct domain_error : error {
  using error::error;
};

// A method's applicability condition is not met (e.g. sample size below the
// threshold a bound requires). The message names the requirement.
struct precondition_error : error {
  using error::error;
};

// An iterative scheme failed to reach its tolerance.
struct convergence_error : error {
  using error::error;
};

// A root bracket does not straddle a sign change.
struct bracket_error : error {
  using error::error;
};

// A request is outside the supported operating regime (e.g. sampler budget).
struct unsupported_error : error {
  using error::error;
};

}  // namespace rarecert
