#pragma once

#include <stdexcept>
#include <string>

namespace lfif {

// Bad input: wrong dimensions, out-of-range orders, inadmissible scaling.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lfif
