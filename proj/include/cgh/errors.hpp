#pragma once

#include <stdexcept>
#include <string>

namespace cgh {

/// Thrown when a computation would exceed a configured size or face budget.
/// The message names the gate that was hit and the offending size.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a chain complex fails a structural invariant, e.g. when a
/// composed boundary map is nonzero.  The message names the dimension and
/// the basis element where the failure was detected.
class MalformedComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cgh
