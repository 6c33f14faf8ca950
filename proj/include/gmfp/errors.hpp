#pragma once

#include <stdexcept>
#include <string>

namespace gmfp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the domain of a map (e.g. a float fed to a map that
/// must decide rationality).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace gmfp
