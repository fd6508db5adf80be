#pragma once

#include <stdexcept>
#include <string>

namespace mtc {

enum class ErrorCode {
  invalid_argument = 1,
  dimension_mismatch = 2,
  verification_failed = 3,
  search_exhausted = 4,
  io = 5,
};

// All library failures surface as this exception; the C API maps `code` to a
// status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace mtc
