#pragma once

#include <stdexcept>
#include <string>

namespace gsav {

// Error kinds map 1:1 onto CLI exit codes (see docs/formats.md).
enum class ErrorKind : int {
  Usage = 2,
  Io = 3,
  Format = 4,
  Dimension = 5,
  Numeric = 6,
  GradCheck = 7,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool cond, ErrorKind kind, const std::string& message) {
  if (!cond) fail(kind, message);
}

}  // namespace gsav
