#pragma once

#include <stdexcept>
#include <string>

namespace geodot {

enum class Status {
  Ok = 0,
  InvalidArgument = 1,
  DimensionMismatch = 2,
  Domain = 3,
  NotNormalized = 4,
  DuplicatePoints = 5,
  Parse = 6,
  Io = 7,
  ScaleExceeded = 8,
  UnknownScenario = 9,
  Internal = 10,
};

/// Exception carrying a Status code alongside the message. The C API layer
/// translates these into integer status codes; C++ callers can catch by type.
class Error : public std::runtime_error {
 public:
  Error(Status code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Status code() const { return code_; }

 private:
  Status code_;
};

[[noreturn]] inline void fail(Status code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Status code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace geodot
