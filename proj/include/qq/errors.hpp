#pragma once

#include <stdexcept>
#include <string>

namespace qq {

// Invalid field specification: non-prime or even characteristic, bad modulus,
// order above the table cap.
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameters (a, b) violating the quasigroup condition, or otherwise outside
// an operation's precondition.
class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size cap would be exceeded.
class CapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace qq
