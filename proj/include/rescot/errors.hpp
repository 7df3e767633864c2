#pragma once

#include <stdexcept>
#include <string>

namespace rescot {

/* Error hierarchy shared by the library and the command line front end.
 * The front end maps each class to a distinct process exit code. */

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* malformed or inconsistent configuration / problem data (exit code 2) */
struct ConfigError : Error {
  using Error::Error;
};

/* queries outside the controller or state domain (exit code 3) */
struct DomainError : Error {
  using Error::Error;
};

/* bad file references: missing files, version mismatches, unknown ids (exit code 4) */
struct ReferenceError : Error {
  using Error::Error;
};

/* violated internal invariants, non-termination guards (exit code 5) */
struct InternalError : Error {
  using Error::Error;
};

/* numerical integration produced a non-finite state */
struct IntegrationDivergedError : DomainError {
  using DomainError::DomainError;
};

}  // namespace rescot
