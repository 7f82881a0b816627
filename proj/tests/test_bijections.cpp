#include <doctest.h>

#include <set>

#include "maplab/bijections.hpp"
#include "maplab/error.hpp"

using namespace maplab;

namespace {

PlaneMap one_edge() { return PlaneMap::build_paired({0, 1}, 0); }
PlaneMap loop() { return PlaneMap::build_paired({1, 0}, 0); }

}  // namespace

TEST_CASE("successor examples") {
  const std::vector<int> a{0, 1, 0};
  CHECK(successor(a, 1) == 2);
  CHECK(successor(a, 0) == kInfinity);
  const std::vector<int> b{0, -1, 0};
  CHECK(successor(b, 0) == 1);
  CHECK(successor(b, 1) == kInfinity);
  CHECK_THROWS_AS(successor(a, 2), MapLabError);
}

TEST_CASE("successor_corners agrees with the direct scan") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& tree : enumerate_trees(n)) {
      const auto process = contour_label_process(tree);
      const auto fast = successor_corners(process.label);
      for (std::size_t i = 0; i < 2 * n; ++i) {
        const std::size_t slow = successor(process.label, i);
        CHECK(fast[i] == (slow == kInfinity ? kInfinity : slow % (2 * n)));
      }
    }
  }
}

TEST_CASE("trivial bijection on the one-edge maps") {
  const PlaneMap q_loop = trivial_map_to_quad(loop());
  const PlaneMap q_edge = trivial_map_to_quad(one_edge());
  CHECK(q_loop.num_faces() == 1);
  CHECK(q_edge.num_faces() == 1);
  CHECK(max_face_degree(q_loop) == 4);
  CHECK_FALSE(isomorphic(q_loop, q_edge));
  CHECK(trivial_quad_to_map(q_loop) == loop());
  CHECK(trivial_quad_to_map(q_edge) == one_edge());
  CHECK_THROWS_AS(trivial_quad_to_map(loop()), MapLabError);
}

TEST_CASE("trivial bijection: even class is the vertex set of m") {
  const PlaneMap q = trivial_map_to_quad(one_edge());
  const auto even = even_class(q);
  CHECK(std::count(even.begin(), even.end(), true) == 2);
  CHECK(trivial_quad_to_map(q).num_vertices() == 2);
}

TEST_CASE("cvs_inverse of the one-edge tree") {
  const WellLabeledTree tree({1, 0}, {0, 1});
  const auto built = cvs_inverse(tree, Epsilon::kTowards);
  const PointedPlaneMap& q = built.quad;
  CHECK(q.map().num_faces() == 1);
  CHECK(q.map().num_vertices() == 3);
  CHECK(max_face_degree(q.map()) == 4);
  CHECK(q.l_plus(built.image.vertex_correspondence[0]) == 1);
  CHECK(q.l_plus(built.image.vertex_correspondence[1]) == 2);
  CHECK(q.l_plus(q.v_star()) == 0);
  CHECK(q.points_towards(q.map().root()));
  CHECK_FALSE(cvs_inverse(tree, Epsilon::kAway).quad.points_towards(1));
}

TEST_CASE("cvs roundtrip and arcs point towards v*") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& tree : enumerate_trees(n)) {
      for (Epsilon eps : {Epsilon::kTowards, Epsilon::kAway}) {
        const auto built = cvs_inverse(tree, eps);
        CHECK(max_face_degree(built.quad.map()) == 4);
        for (std::size_t i = 0; i < 2 * n; ++i) CHECK(built.quad.points_towards(built.arc(i)));
        const CvsImage back = cvs_forward(built.quad);
        CHECK(back.tree == tree);
        CHECK(back.eps == eps);
        CHECK(back.vertex_correspondence == built.image.vertex_correspondence);
      }
    }
  }
}

TEST_CASE("pointed quadrangulations are distinct and ab is injective") {
  for (std::size_t n = 1; n <= 3; ++n) {
    std::set<std::vector<std::uint32_t>> quads, images;
    std::size_t total = 0;
    for (const auto& tree : enumerate_trees(n)) {
      for (Epsilon eps : {Epsilon::kTowards, Epsilon::kAway}) {
        const auto built = cvs_inverse(tree, eps);
        quads.insert(canonical_key(built.quad));
        const AbImage ab = ab_forward(built.quad);
        auto key = canonical_key(ab.map);
        key.push_back(static_cast<std::uint32_t>(bit(ab.eps)));
        images.insert(key);
        CHECK(ab.map.map().num_edges() == n);
        ++total;
      }
    }
    CHECK(quads.size() == total);
    CHECK(images.size() == total);
  }
}

TEST_CASE("face classification and special darts") {
  for (const auto& tree : enumerate_trees(3)) {
    const auto built = cvs_inverse(tree, Epsilon::kTowards);
    const auto faces = classify_faces(built.quad);
    for (FaceId f = 0; f < faces.kind.size(); ++f) {
      if (faces.kind[f] == FaceKind::kConfluent) {
        CHECK(faces.special[f] == kNoDart);
      } else {
        const Dart s = faces.special[f];
        CHECK(built.quad.points_towards(s));
      }
    }
  }
}

TEST_CASE("d_circ formula examples") {
  const std::vector<int> a{0, 1, 0};
  CHECK(d_circ_formula(a, 0, 1) == 1);
  CHECK(d_circ_formula(a, 1, 1) == 0);
  CHECK_THROWS_AS(d_circ_formula(a, 0, 3), MapLabError);
}

TEST_CASE("geodesics, specialness and the label functional") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& tree : enumerate_trees(n)) {
      const auto built = cvs_inverse(tree, Epsilon::kTowards);
      const PointedPlaneMap& q = built.quad;
      const AbImage ab = ab_forward(q);
      const auto process = contour_label_process(tree);
      std::vector<GeodesicChain> chains;
      for (std::size_t i = 0; i < 2 * n; ++i) {
        GeodesicChain chain = leftmost_geodesic(q, built.arc(i));
        GeodesicChain expected;
        for (std::size_t c = i; c != kInfinity; c = built.successor[c]) {
          expected.push_back(built.arc(c));
        }
        CHECK(chain == expected);
        for (std::size_t k = 1; k < chain.size(); ++k) CHECK(is_special(q, ab, chain[k]));
        chains.push_back(std::move(chain));
      }
      for (std::size_t i = 0; i < 2 * n; ++i) {
        const auto row = d_circ_row(process.label, i);
        for (std::size_t j = 0; j < 2 * n; ++j) {
          CHECK(row[j] == d_circ_formula(process.label, i, j));
          CHECK(row[j] == d_circ_from_chains(chains[i], chains[j]));
        }
      }
    }
  }
}
