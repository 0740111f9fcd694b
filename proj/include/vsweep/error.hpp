#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vsweep {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidKernel,
  kStepTooLarge,
  kDegenerateGradient,
  kNoConvergence,
  kUnsupported,
  kInvalidConfig,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code lets
/// callers (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vsweep
