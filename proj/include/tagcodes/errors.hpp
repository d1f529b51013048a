#pragma once

#include <stdexcept>
#include <string>

namespace tagcodes {

// Bad input: a precondition of a public operation does not hold.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two independent computations disagreed. Always a bug, never bad input.
class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw validation_error(what);
}

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw invariant_error(what);
}

}  // namespace tagcodes
