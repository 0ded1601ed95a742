#pragma once

#include <stdexcept>
#include <string>

namespace gslab {

/// Raised on invalid input: bad indices, malformed files, precondition
/// violations. The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gslab
