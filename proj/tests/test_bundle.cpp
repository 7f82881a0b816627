#include <doctest.h>

#include <fstream>
#include <sstream>

#include "maplab/bundle.hpp"
#include "maplab/cli.hpp"
#include "test_util.hpp"

using namespace maplab;
using maplab::testing::error_of;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("bundle roundtrip over all small instances") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& tree : enumerate_trees(n)) {
      for (Epsilon eps : {Epsilon::kTowards, Epsilon::kAway}) {
        const InstanceBundle b = make_bundle(tree, eps);
        const std::string text = write_bundle(b);
        const InstanceBundle back = read_bundle(text);
        CHECK(back.tree == tree);
        CHECK(back.eps == eps);
        CHECK(write_bundle(back) == text);
      }
    }
  }
}

TEST_CASE("golden bundles are reproduced byte for byte") {
  for (const char* seed : {"1", "2"}) {
    CAPTURE(seed);
    const std::string golden = slurp(std::string(MAPLAB_GOLDEN_DIR) + "/bundle_n5_seed" + seed +
                                     ".json");
    std::ostringstream out, err;
    CHECK(run({"sample", "quad", "--n", "5", "--seed", seed, "--format", "bundle"}, out, err) ==
          kExitOk);
    CHECK(out.str() == golden);
    CHECK(write_bundle(read_bundle(golden)) == golden);
  }
}

TEST_CASE("tampered bundles are rejected") {
  const WellLabeledTree tree({1, 0, 1, 0}, {0, 1, 0});
  const std::string text = write_bundle(make_bundle(tree, Epsilon::kTowards));
  CHECK(error_of([&] { read_bundle(text.substr(0, text.size() / 2)); }) == ErrorCode::kParseError);
  std::string wrong_eps = text;
  const auto pos = wrong_eps.find("\"eps\": 0");
  REQUIRE(pos != std::string::npos);
  wrong_eps.replace(pos, 8, "\"eps\": 1");
  CHECK(error_of([&] { read_bundle(wrong_eps); }) == ErrorCode::kParseError);
}
