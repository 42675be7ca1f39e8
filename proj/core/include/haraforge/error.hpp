#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace haraforge {

enum class ErrorCode {
  kMalformed,
  kOutOfRange,
  kInvalidModel,
  kNothingToEnumerate,
  kNoLinkedScenarios,
  kUnknownElement,
  kUnknownGoal,
  kInconsistentInput,
  kUnknownRule,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Raised by operations whose contract has an error outcome. The code
/// identifies the outcome; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace haraforge
