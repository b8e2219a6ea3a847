#pragma once

#include <stdexcept>
#include <string>

namespace imcsp {

enum class ErrorKind {
  Structural,    // malformed instance or out-of-range index
  Schema,        // JSON that does not match the expected layout
  Guard,         // size guard of an exhaustive routine
  Capacity,      // coloring family larger than the configured cap
  Precondition,  // documented precondition of an operation does not hold
  Internal,      // consistency check between two independent routes failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace imcsp
