#pragma once

#include <stdexcept>
#include <string>

namespace carb {

// Thrown when a Riemann problem would open a vacuum region.
struct VacuumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when shock relations are requested for subsonic data.
struct NoShockError : std::domain_error {
  using std::domain_error::domain_error;
};

// Thrown when no attached oblique shock exists for the requested deflection.
struct DetachmentError : std::domain_error {
  using std::domain_error::domain_error;
};

// Thrown when an iteration fails to converge or a field goes nonfinite;
// aborts the run.
struct SolverAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid state passed to an operation (nonpositive density etc.).
struct StateError : std::domain_error {
  using std::domain_error::domain_error;
};

// Misuse of a diagnostic or driver API.
struct UsageError : std::logic_error {
  using std::logic_error::logic_error;
};

// Configuration file problems; message names the key and line.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace carb
