#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maplab {

enum class ErrorCode {
  kInvalidInvolution,
  kDisconnected,
  kNonPlanar,
  kInvalidPermutation,
  kUnknownVertex,
  kNotAQuadrangulation,
  kNotPointingTowards,
  kIndexOutOfRange,
  kBoundExceeded,
  kInvalidTree,
  kParseError,
  kAssertionFailure,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and tests) can tell contract violations apart without string
/// matching.
class MapLabError : public std::runtime_error {
 public:
  MapLabError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace maplab
