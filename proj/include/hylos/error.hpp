#pragma once

#include <stdexcept>
#include <string>

namespace hylos {

enum class ErrorCode {
  invalid_argument = 1,
  degenerate_input,
  bracket_not_found,
  numerical_failure,
  io_error,
  config_error,
  tag_mismatch,
};

/// Exception carrying a stable code so the C boundary can map it to a status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace hylos
