#pragma once

#include <stdexcept>
#include <string>

namespace rgm {

// Bad user input (config fields, names, unknown suites).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical precondition failed: ell | |Gamma|, bounds exceeded, ...
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CoprimalityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class BoundError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Internal consistency check failed. Should never fire.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_internal(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace rgm
