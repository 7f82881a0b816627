#include "maplab/bundle.hpp"

#include <json.hpp>

#include "maplab/error.hpp"
#include "maplab/map_io.hpp"

namespace maplab {

using nlohmann::json;

InstanceBundle make_bundle(const WellLabeledTree& tree, Epsilon eps, const FaceRules& rules) {
  CvsQuadrangulation built = cvs_inverse(tree, eps);
  AbImage ab = ab_forward(built.quad, rules);
  return InstanceBundle{tree,
                        eps,
                        std::move(built.quad),
                        std::move(ab.map),
                        std::move(built.image.vertex_correspondence),
                        std::move(ab.vertex_correspondence),
                        std::nullopt,
                        std::nullopt};
}

std::string write_bundle(const InstanceBundle& bundle) {
  std::string dyck;
  for (auto step : bundle.tree.dyck()) dyck.push_back(step ? '1' : '0');
  nlohmann::ordered_json doc;
  doc["schema_version"] = kBundleSchemaVersion;
  doc["kind"] = "instance_bundle";
  doc["n"] = bundle.tree.num_edges();
  doc["tree"] = {{"dyck", dyck}, {"labels", bundle.tree.labels()}};
  doc["eps"] = bit(bundle.eps);
  doc["quad"] = write_map_text(bundle.quad);
  doc["map"] = write_map_text(bundle.map);
  doc["tree_to_quad"] = bundle.tree_to_quad;
  doc["map_to_quad"] = bundle.map_to_quad;
  if (bundle.failed_check) doc["failed_check"] = *bundle.failed_check;
  if (bundle.detail) doc["detail"] = *bundle.detail;
  return doc.dump(2) + "\n";
}

namespace {

PointedPlaneMap pointed_from_text(const json& value, const char* field) {
  MapText parsed = read_map_text(value.get<std::string>());
  if (!parsed.v_star) {
    throw MapLabError(ErrorCode::kParseError, std::string(field) + " has no point line");
  }
  return PointedPlaneMap(std::move(parsed.map), *parsed.v_star);
}

}  // namespace

InstanceBundle read_bundle(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& err) {
    throw MapLabError(ErrorCode::kParseError, err.what());
  }
  try {
    if (doc.at("schema_version").get<int>() != kBundleSchemaVersion ||
        doc.at("kind").get<std::string>() != "instance_bundle") {
      throw MapLabError(ErrorCode::kParseError, "not an instance bundle of a known version");
    }
    std::vector<std::uint8_t> dyck;
    for (char c : doc.at("tree").at("dyck").get<std::string>()) {
      if (c != '0' && c != '1') throw MapLabError(ErrorCode::kParseError, "bad Dyck word");
      dyck.push_back(c == '1' ? 1 : 0);
    }
    WellLabeledTree tree(std::move(dyck), doc.at("tree").at("labels").get<std::vector<int>>());
    const int eps_bit = doc.at("eps").get<int>();
    if (eps_bit != 0 && eps_bit != 1) throw MapLabError(ErrorCode::kParseError, "eps must be 0 or 1");
    const Epsilon eps = static_cast<Epsilon>(eps_bit);
    InstanceBundle bundle{std::move(tree),
                          eps,
                          pointed_from_text(doc.at("quad"), "quad"),
                          pointed_from_text(doc.at("map"), "map"),
                          doc.at("tree_to_quad").get<std::vector<VertexId>>(),
                          doc.at("map_to_quad").get<std::vector<VertexId>>(),
                          std::nullopt,
                          std::nullopt};
    if (doc.contains("failed_check")) bundle.failed_check = doc["failed_check"].get<std::string>();
    if (doc.contains("detail")) bundle.detail = doc["detail"].get<std::string>();
    const CvsQuadrangulation replay = cvs_inverse(bundle.tree, eps);
    if (!(replay.quad.map() == bundle.quad.map()) ||
        replay.quad.v_star() != bundle.quad.v_star()) {
      throw MapLabError(ErrorCode::kParseError, "quad does not match the tree and eps");
    }
    return bundle;
  } catch (const json::exception& err) {
    throw MapLabError(ErrorCode::kParseError, err.what());
  }
}

}  // namespace maplab
