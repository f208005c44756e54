#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lazylight {

enum class ErrorCode {
  InvalidLength,
  NotPowerOfTwo,
  IndexOutOfRange,
  NotInnerNode,
  InvalidGenesis,
  InvalidBlockSize,
  NoDisagreement,
  NoProvers,
  InvalidParams,
  DecodeError,
  InvalidScenario,
  IdenticalClaims,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lazylight
