#include <doctest.h>

#include <algorithm>

#include "maplab/bijections.hpp"
#include "maplab/map_io.hpp"
#include "maplab/plane_map.hpp"
#include "maplab/trees.hpp"
#include "test_util.hpp"

using namespace maplab;
using maplab::testing::error_of;

namespace {

PlaneMap one_edge() { return PlaneMap::build_paired({0, 1}, 0); }
PlaneMap loop() { return PlaneMap::build_paired({1, 0}, 0); }

// Cycle of length k: edge e joins vertex e to vertex e + 1, dart 2e leaves e.
PlaneMap cycle(std::uint32_t k) {
  std::vector<Dart> sigma(2 * k);
  for (std::uint32_t v = 0; v < k; ++v) {
    const Dart out = 2 * v;
    const Dart back = 2 * ((v + k - 1) % k) + 1;
    sigma[out] = back;
    sigma[back] = out;
  }
  return PlaneMap::build_paired(sigma, 0);
}

std::vector<PlaneMap> small_quads(std::size_t n) {
  std::vector<PlaneMap> out;
  for (const auto& tree : enumerate_trees(n)) {
    out.push_back(cvs_inverse(tree, Epsilon::kTowards).quad.map());
  }
  return out;
}

}  // namespace

TEST_CASE("build: one edge and loop") {
  const PlaneMap e = one_edge();
  CHECK(e.num_edges() == 1);
  CHECK(e.num_vertices() == 2);
  CHECK(e.num_faces() == 1);
  CHECK(e.face_degree(0) == 2);

  const PlaneMap l = loop();
  CHECK(l.num_vertices() == 1);
  CHECK(l.num_faces() == 2);
  CHECK(l.vertex_degree(0) == 2);
}

TEST_CASE("build: rejected inputs") {
  CHECK(error_of([] { PlaneMap::build({0, 1}, {0, 1}, 0); }) == ErrorCode::kInvalidInvolution);
  CHECK(error_of([] { PlaneMap::build({0, 0}, {1, 0}, 0); }) == ErrorCode::kInvalidPermutation);
  CHECK(error_of([] { PlaneMap::build({0, 1, 2}, {1, 0, 2}, 0); }) != std::nullopt);
  CHECK(error_of([] { PlaneMap::build_paired({0, 1}, 5); }) == ErrorCode::kIndexOutOfRange);
  // Two separate edges.
  CHECK(error_of([] { PlaneMap::build_paired({0, 1, 2, 3}, 0); }) == ErrorCode::kDisconnected);
  // Two loops at one vertex, interleaved: a torus.
  CHECK(error_of([] { PlaneMap::build_paired({2, 3, 1, 0}, 0); }) == ErrorCode::kNonPlanar);
}

TEST_CASE("the 4-cycle is a quadrangulation with two faces") {
  const PlaneMap q = cycle(4);
  CHECK(q.num_vertices() == 4);
  CHECK(q.num_faces() == 2);
  CHECK(max_face_degree(q) == 4);
  CHECK(max_vertex_degree(q) == 2);
  const auto d = bfs_distances(q, 0);
  CHECK(d == std::vector<std::uint32_t>{0, 1, 2, 1});
  CHECK(error_of([&] { bfs_distances(q, 4); }) == ErrorCode::kUnknownVertex);

  // Its trivial image is a pair of parallel edges between the two even vertices.
  const PlaneMap m = trivial_quad_to_map(q);
  CHECK(m.num_edges() == 2);
  CHECK(m.num_vertices() == 2);
  CHECK(m.num_faces() == 2);
  CHECK(isomorphic(trivial_map_to_quad(m), q));
}

TEST_CASE("faces partition the darts in phi order") {
  const PlaneMap q = cycle(5);
  const auto fs = faces(q);
  REQUIRE(fs.size() == 2);
  std::vector<Dart> all;
  for (const auto& f : fs) {
    for (std::size_t k = 0; k < f.size(); ++k) CHECK(q.phi(f[k]) == f[(k + 1) % f.size()]);
    all.insert(all.end(), f.begin(), f.end());
  }
  std::sort(all.begin(), all.end());
  CHECK(all.size() == q.num_darts());
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("dual exchanges the loop and the edge") {
  CHECK(isomorphic(dual(loop()), one_edge()));
  CHECK(isomorphic(dual(one_edge()), loop()));
}

TEST_CASE("dual is an involution that swaps degrees") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const PlaneMap& q : small_quads(n)) {
      const PlaneMap m = trivial_quad_to_map(q);
      const PlaneMap d = dual(m);
      CHECK(dual(d) == m);
      CHECK(d.num_vertices() == m.num_faces());
      CHECK(d.num_faces() == m.num_vertices());
      CHECK(max_face_degree(d) == max_vertex_degree(m));
      CHECK(max_vertex_degree(d) == max_face_degree(m));
    }
  }
}

TEST_CASE("map text roundtrip is byte exact") {
  const PlaneMap q = cycle(4);
  const std::string text = write_map_text(q, VertexId{2});
  CHECK(text == "4 0\n7 2 1 4 3 6 5 0\n1 0 3 2 5 4 7 6\npoint 2\n");
  const MapText parsed = read_map_text(text);
  CHECK(parsed.map == q);
  CHECK(parsed.v_star == VertexId{2});
  CHECK(write_map_text(parsed.map, parsed.v_star) == text);

  const std::string plain = write_map_text(loop());
  CHECK(write_map_text(read_map_text(plain).map) == plain);
}

TEST_CASE("map text parsing is strict") {
  CHECK(error_of([] { read_map_text("1 0\n0 1\n1 0"); }) == ErrorCode::kParseError);
  CHECK(error_of([] { read_map_text("1 0\n0  1\n1 0\n"); }) == ErrorCode::kParseError);
  CHECK(error_of([] { read_map_text("1 0\n0 1\n"); }) == ErrorCode::kParseError);
  CHECK(error_of([] { read_map_text("1 0\n0 1\n1 0\npoint 7\n"); }) == ErrorCode::kUnknownVertex);
  CHECK(error_of([] { read_map_text("1 0\n0 1\n0 1\n"); }) == ErrorCode::kInvalidInvolution);
}

TEST_CASE("l_plus is the BFS distance to the point") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const PlaneMap& q : small_quads(n)) {
      for (VertexId v = 0; v < q.num_vertices(); ++v) {
        const PointedPlaneMap p(q, v);
        CHECK(p.l_plus() == bfs_distances(q, v));
      }
    }
  }
}

TEST_CASE("graph distances satisfy the triangle inequality") {
  for (const PlaneMap& q : small_quads(3)) {
    std::vector<std::vector<std::uint32_t>> d;
    for (VertexId v = 0; v < q.num_vertices(); ++v) d.push_back(bfs_distances(q, v));
    for (VertexId a = 0; a < q.num_vertices(); ++a) {
      for (VertexId b = 0; b < q.num_vertices(); ++b) {
        CHECK(d[a][b] == d[b][a]);
        for (VertexId c = 0; c < q.num_vertices(); ++c) CHECK(d[a][c] <= d[a][b] + d[b][c]);
      }
    }
  }
}

TEST_CASE("canonical form identifies rerooted copies only up to the root") {
  const PlaneMap q = cycle(4);
  const auto key = canonical_key(q);
  // Every dart of the 4-cycle is equivalent under rotation/reflection-free symmetry.
  for (Dart d = 0; d < q.num_darts(); ++d) CHECK(canonical_key(q.rerooted(d)) == key);
  CHECK(canonical_key(loop()) != canonical_key(one_edge()));
}
