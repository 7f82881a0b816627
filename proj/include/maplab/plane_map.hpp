#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace maplab {

using Dart = std::uint32_t;
using VertexId = std::uint32_t;
using FaceId = std::uint32_t;

inline constexpr Dart kNoDart = std::numeric_limits<Dart>::max();
inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Rooted combinatorial map of genus 0 given as a rotation system.
///
/// Darts are dense ids in [0, 2 * num_edges). `alpha` reverses a dart and
/// `sigma` moves to the next dart around the common origin. Faces are the
/// orbits of phi = sigma o alpha (alpha applied first); the face of a dart is
/// regarded as the face lying to its left, which makes `sigma` the clockwise
/// rotation around a vertex. The corner "before" a dart d is the angular
/// sector between sigma^-1(d) and d; it belongs to the face of d.
///
/// Vertex (resp. face) ids are the sigma (resp. phi) orbits numbered in order
/// of their smallest dart. Instances are immutable once built.
class PlaneMap {
 public:
  /// Validates the rotation system: permutations of the right size, alpha a
  /// fixed-point-free involution, transitivity, and Euler characteristic 2.
  static PlaneMap build(std::vector<Dart> sigma, std::vector<Dart> alpha, Dart root);

  /// Convenience for the common layout alpha(2k) = 2k + 1.
  static PlaneMap build_paired(std::vector<Dart> sigma, Dart root);

  std::size_t num_edges() const { return sigma_.size() / 2; }
  std::size_t num_darts() const { return sigma_.size(); }
  std::size_t num_vertices() const { return vertex_offsets_.size() - 1; }
  std::size_t num_faces() const { return face_offsets_.size() - 1; }

  Dart root() const { return root_; }
  VertexId root_vertex() const { return origin(root_); }

  Dart sigma(Dart d) const { return sigma_[d]; }
  Dart sigma_inv(Dart d) const { return sigma_inv_[d]; }
  Dart alpha(Dart d) const { return alpha_[d]; }
  Dart phi(Dart d) const { return sigma_[alpha_[d]]; }
  Dart phi_inv(Dart d) const { return alpha_[sigma_inv_[d]]; }

  VertexId origin(Dart d) const { return vertex_of_[d]; }
  VertexId target(Dart d) const { return vertex_of_[alpha_[d]]; }
  FaceId face(Dart d) const { return face_of_[d]; }

  /// Darts leaving `v`, in sigma order starting from the smallest one.
  std::span<const Dart> darts_around(VertexId v) const {
    return {vertex_darts_.data() + vertex_offsets_[v],
            vertex_darts_.data() + vertex_offsets_[v + 1]};
  }
  /// Darts of face `f` in phi order starting from the smallest one.
  std::span<const Dart> face_darts(FaceId f) const {
    return {face_darts_.data() + face_offsets_[f], face_darts_.data() + face_offsets_[f + 1]};
  }

  std::size_t vertex_degree(VertexId v) const {
    return vertex_offsets_[v + 1] - vertex_offsets_[v];
  }
  std::size_t face_degree(FaceId f) const { return face_offsets_[f + 1] - face_offsets_[f]; }

  const std::vector<Dart>& sigma_permutation() const { return sigma_; }
  const std::vector<Dart>& alpha_permutation() const { return alpha_; }

  /// Same map with a different root dart.
  PlaneMap rerooted(Dart root) const;

  bool operator==(const PlaneMap& other) const {
    return root_ == other.root_ && sigma_ == other.sigma_ && alpha_ == other.alpha_;
  }

 private:
  PlaneMap() = default;

  std::vector<Dart> sigma_;
  std::vector<Dart> sigma_inv_;
  std::vector<Dart> alpha_;
  Dart root_ = 0;

  std::vector<VertexId> vertex_of_;
  std::vector<FaceId> face_of_;
  std::vector<std::uint32_t> vertex_offsets_;
  std::vector<Dart> vertex_darts_;
  std::vector<std::uint32_t> face_offsets_;
  std::vector<Dart> face_darts_;
};

/// Partition of the darts into face cycles (phi orbits), one vector per face.
std::vector<std::vector<Dart>> faces(const PlaneMap& map);

/// Graph distances from `source`; throws UnknownVertex for a bad id.
std::vector<std::uint32_t> bfs_distances(const PlaneMap& map, VertexId source);

std::size_t max_face_degree(const PlaneMap& map);
std::size_t max_vertex_degree(const PlaneMap& map);

/// Dual map on the same darts: sigma* = phi, alpha* = alpha, same root. With
/// this orientation dual(dual(m)) == m exactly, vertices of the dual are the
/// faces of m and vice versa.
PlaneMap dual(const PlaneMap& map);

/// A map with a distinguished vertex and the distance labels l+ to it.
class PointedPlaneMap {
 public:
  PointedPlaneMap(PlaneMap map, VertexId v_star);

  const PlaneMap& map() const { return map_; }
  VertexId v_star() const { return v_star_; }
  std::uint32_t l_plus(VertexId v) const { return l_plus_[v]; }
  const std::vector<std::uint32_t>& l_plus() const { return l_plus_; }

  /// True when dart d decreases the distance to v_star by one.
  bool points_towards(Dart d) const {
    return l_plus_[map_.target(d)] + 1 == l_plus_[map_.origin(d)];
  }

 private:
  PlaneMap map_;
  VertexId v_star_;
  std::vector<std::uint32_t> l_plus_;
};

/// Canonical relabeling of darts by breadth-first traversal from the root:
/// the root becomes dart 0, its reverse dart 1, and every edge k gets darts
/// 2k, 2k + 1. Two rooted maps are isomorphic iff their canonical forms are
/// equal.
struct CanonicalMap {
  std::vector<Dart> relabel;  // old dart -> new dart
  PlaneMap map;
};

CanonicalMap canonical_form(const PlaneMap& map);

/// Key identifying a rooted (and optionally pointed) map up to isomorphism.
std::vector<std::uint32_t> canonical_key(const PlaneMap& map);
std::vector<std::uint32_t> canonical_key(const PointedPlaneMap& pointed);

bool isomorphic(const PlaneMap& a, const PlaneMap& b);

}  // namespace maplab
