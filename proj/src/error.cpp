#include "maplab/error.hpp"

namespace maplab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInvolution: return "InvalidInvolution";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kNonPlanar: return "NonPlanar";
    case ErrorCode::kInvalidPermutation: return "InvalidPermutation";
    case ErrorCode::kUnknownVertex: return "UnknownVertex";
    case ErrorCode::kNotAQuadrangulation: return "NotAQuadrangulation";
    case ErrorCode::kNotPointingTowards: return "NotPointingTowards";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kBoundExceeded: return "BoundExceeded";
    case ErrorCode::kInvalidTree: return "InvalidTree";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kAssertionFailure: return "AssertionFailure";
  }
  return "Unknown";
}

}  // namespace maplab
