#pragma once

#include <optional>

#include "maplab/error.hpp"

namespace maplab::testing {

/// Code of the MapLabError thrown by f, or nullopt if nothing was thrown.
template <class F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const MapLabError& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace maplab::testing
