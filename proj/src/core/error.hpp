#pragma once

#include <stdexcept>
#include <string>

namespace tarjim {

// Error categories. The numeric values are mirrored by tarjim_status in the
// public C header.
enum class ErrorCode {
  InvalidArgument = 1,
  Config = 2,
  Data = 3,
  Io = 4,
  Network = 5,
  Protocol = 6,
  Internal = 7,
};

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

}  // namespace tarjim
