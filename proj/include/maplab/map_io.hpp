#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "maplab/plane_map.hpp"

namespace maplab {

/// Text form of a map, one file per map:
///
///   <n_edges> <root>
///   <sigma(0)> <sigma(1)> ... <sigma(2n-1)>
///   <alpha(0)> ... <alpha(2n-1)>
///   point <v_star>            (optional)
///
/// Fields are separated by single spaces and every line ends with '\n'.
/// Parsing is strict so that write(read(text)) reproduces the input bytes.
struct MapText {
  PlaneMap map;
  std::optional<VertexId> v_star;
};

std::string write_map_text(const PlaneMap& map, std::optional<VertexId> v_star = std::nullopt);
std::string write_map_text(const PointedPlaneMap& pointed);
MapText read_map_text(std::string_view text);

}  // namespace maplab
