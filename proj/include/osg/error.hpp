#pragma once

#include <stdexcept>
#include <string>

namespace osg {

// Raised for violated preconditions and numerical checks that fail
// (truncated grids, unconverged integration, malformed input).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace osg
