#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maplab/bijections.hpp"

namespace maplab {

/// Everything derived from one (tree, eps): the pointed quadrangulation, the
/// AB map and both vertex correspondences. Serialized as a single JSON
/// document; used for golden files and as the counterexample format.
struct InstanceBundle {
  WellLabeledTree tree;
  Epsilon eps;
  PointedPlaneMap quad;
  PointedPlaneMap map;
  std::vector<VertexId> tree_to_quad;
  std::vector<VertexId> map_to_quad;
  /// Name of the failed check and a short description, for counterexamples.
  std::optional<std::string> failed_check;
  std::optional<std::string> detail;
};

inline constexpr int kBundleSchemaVersion = 1;

/// Runs cvs_inverse and ab_forward. With non-default rules the AB step may
/// throw; use the quad-only overload below in that case.
InstanceBundle make_bundle(const WellLabeledTree& tree, Epsilon eps, const FaceRules& rules = {});

std::string write_bundle(const InstanceBundle& bundle);

/// Strict parse; also checks that the stored quadrangulation is the one
/// cvs_inverse builds from the stored tree and eps.
InstanceBundle read_bundle(std::string_view text);

}  // namespace maplab
