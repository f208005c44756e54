#include "lazylight/error.hpp"

namespace lazylight {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidLength: return "InvalidLength";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotInnerNode: return "NotInnerNode";
    case ErrorCode::InvalidGenesis: return "InvalidGenesis";
    case ErrorCode::InvalidBlockSize: return "InvalidBlockSize";
    case ErrorCode::NoDisagreement: return "NoDisagreement";
    case ErrorCode::NoProvers: return "NoProvers";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::IdenticalClaims: return "IdenticalClaims";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace lazylight
