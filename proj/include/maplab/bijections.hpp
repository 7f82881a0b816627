#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "maplab/plane_map.hpp"
#include "maplab/trees.hpp"

namespace maplab {

/// Extra bit of the CVS and AB images: kTowards when the root dart of the
/// quadrangulation points towards the distinguished vertex.
enum class Epsilon : std::uint8_t { kTowards = 0, kAway = 1 };

constexpr int bit(Epsilon eps) { return static_cast<int>(eps); }

// ---------------------------------------------------------------------------
// Trivial bijection between rooted maps with n edges and rooted
// quadrangulations with n faces.

/// Adds a vertex in every face of m joined to each of its corners. Edge k of
/// the result corresponds to dart k of m (the corner before it); dart 2k
/// leaves the vertex of m. The root is the edge through the corner before the
/// root of m, leaving the root vertex.
PlaneMap trivial_map_to_quad(const PlaneMap& m);

/// Inverse of trivial_map_to_quad. Throws NotAQuadrangulation unless every
/// face has degree 4 and the map is bipartite.
PlaneMap trivial_quad_to_map(const PlaneMap& q);

/// Vertices at even distance from the root vertex.
std::vector<bool> even_class(const PlaneMap& q);

// ---------------------------------------------------------------------------
// Face rules shared by CVS (red arcs) and AB (green arcs).

enum class FaceKind : std::uint8_t { kSimple, kConfluent };

/// Arc rules inside one quadrangular face. The defaults are the CVS and AB
/// rules; the switches exist so that tests can check that any single changed
/// rule is detected by the certification ledgers.
struct FaceRules {
  /// Simple face: red arc from the l+2 corner to the next corner clockwise
  /// (otherwise counterclockwise).
  bool red_simple_clockwise = true;
  /// Confluent face: red arc between the two l+1 corners (otherwise l).
  bool red_confluent_high = true;
  /// Simple face: green arc from the l corner to the next corner clockwise.
  bool green_simple_clockwise = true;
  /// Confluent face: green arc between the two l corners (otherwise l+1).
  bool green_confluent_low = true;
};

/// An arc drawn inside a face between two of its corners. A corner is named
/// by the dart that follows it around its vertex, so `from`/`to` are darts of
/// the face with the arc joining from.origin() and to.origin().
struct FaceArc {
  Dart from = kNoDart;
  Dart to = kNoDart;
};

struct FaceClassification {
  std::vector<FaceKind> kind;     // per face of q
  std::vector<FaceArc> red;       // per face
  std::vector<FaceArc> green;     // per face
  std::vector<Dart> special;      // per face, kNoDart for confluent faces
};

/// Classifies every face of a pointed quadrangulation by its label pattern
/// and places the red and green arcs.
FaceClassification classify_faces(const PointedPlaneMap& q, const FaceRules& rules = {});

// ---------------------------------------------------------------------------
// Successors and the CVS bijection.

inline constexpr std::size_t kInfinity = std::numeric_limits<std::size_t>::max();

/// Smallest j > i in the 2n-periodic extension of `label` (which has length
/// 2n + 1, label[2n] == label[0]) with label(j) = label(i) - 1, or kInfinity
/// when label(i) is the minimum. The returned j may exceed 2n.
std::size_t successor(std::span<const int> label, std::size_t i);

/// successor() for every i in [0, 2n), reduced modulo 2n, in linear time.
std::vector<std::size_t> successor_corners(std::span<const int> label);

struct CvsImage {
  WellLabeledTree tree;
  Epsilon eps;
  /// Tree vertex -> quadrangulation vertex (a bijection onto V(q) \ {v*}).
  std::vector<VertexId> vertex_correspondence;
};

/// Pointed quadrangulation built from a labeled tree. Edge i of the result
/// is the arc e_i drawn from contour corner c_i to its successor: dart 2i
/// goes from v_i towards v*, dart 2i + 1 is its reverse. The root is dart 0
/// when eps == kTowards and dart 1 otherwise.
struct CvsQuadrangulation {
  PointedPlaneMap quad;
  CvsImage image;
  std::vector<std::size_t> successor;  // per corner, mod 2n, or kInfinity

  Dart arc(std::size_t i) const { return static_cast<Dart>(2 * (i % successor.size())); }
  /// The endpoint of e_i, always a vertex of the AB map.
  VertexId tilde_vertex(std::size_t i) const { return quad.map().target(arc(i)); }
};

CvsQuadrangulation cvs_inverse(const WellLabeledTree& tree, Epsilon eps);

/// Reads the red tree off a pointed quadrangulation. Throws
/// NotAQuadrangulation for maps that are not quadrangulations and
/// InvalidTree when the red arcs do not form a plane tree (only possible
/// with altered face rules).
CvsImage cvs_forward(const PointedPlaneMap& q, const FaceRules& rules = {});

// ---------------------------------------------------------------------------
// AB bijection: pointed quadrangulation to pointed map with a sign.

struct AbImage {
  PointedPlaneMap map;
  Epsilon eps;
  /// Vertex of m -> vertex of q (onto V(q) \ V_max(q)); v* maps to v*.
  std::vector<VertexId> vertex_correspondence;
  /// Face f of q carries edge f of m, with darts 2f and 2f + 1.
  /// Dart of q (naming a corner) -> dart of m leaving that corner, or kNoDart.
  std::vector<Dart> green_at_corner;
  /// Dart of m -> the dart of q naming the corner it leaves from.
  std::vector<Dart> corner_of_green;
  FaceClassification faces;
};

/// Green map of a pointed quadrangulation. The root of m is the green dart,
/// in the face of the orientation of e* that points towards v*, leaving the
/// head of that orientation; the root vertex of m is therefore e*+ when e*
/// points towards v* (eps = kTowards) and e*- otherwise.
AbImage ab_forward(const PointedPlaneMap& q, const FaceRules& rules = {});

/// Vertices all of whose neighbours are closer to v*.
std::vector<bool> local_maxima(const PointedPlaneMap& q);

// ---------------------------------------------------------------------------
// Geodesics and distance functionals.

using GeodesicChain = std::vector<Dart>;

/// Left-most geodesic to v* with first step e: at every vertex the next step
/// is the first dart clockwise after the arriving edge that points towards
/// v*. Throws NotPointingTowards unless e does.
GeodesicChain leftmost_geodesic(const PointedPlaneMap& q, Dart e);

/// The green arc (as a dart of m oriented like e) when e is special.
std::optional<Dart> is_special(const PointedPlaneMap& q, const AbImage& ab, Dart e);

/// Length of the chain through the branch point of the left-most geodesics
/// of e and e2; zero when e == e2.
std::size_t d_circ_q(const PointedPlaneMap& q, Dart e, Dart e2);

/// Lengths of the two geodesics and of their common suffix.
std::size_t d_circ_from_chains(const GeodesicChain& a, const GeodesicChain& b);

/// Closed-form label functional on contour indices 0..2n.
std::size_t d_circ_formula(std::span<const int> label, std::size_t i, std::size_t j);

/// d_circ_formula(label, i, j) for all j in 0..2n, in linear time.
std::vector<std::uint32_t> d_circ_row(std::span<const int> label, std::size_t i);

}  // namespace maplab
