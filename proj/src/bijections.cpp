#include "maplab/bijections.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "maplab/error.hpp"

namespace maplab {
namespace {

void link_ring(std::vector<Dart>& sigma, const std::vector<Dart>& ring) {
  for (std::size_t t = 0; t < ring.size(); ++t) sigma[ring[t]] = ring[(t + 1) % ring.size()];
}

void require_quadrangulation(const PlaneMap& q) {
  for (FaceId f = 0; f < q.num_faces(); ++f) {
    if (q.face_degree(f) != 4) {
      throw MapLabError(ErrorCode::kNotAQuadrangulation,
                        "face " + std::to_string(f) + " has degree " +
                            std::to_string(q.face_degree(f)));
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Trivial bijection.

PlaneMap trivial_map_to_quad(const PlaneMap& m) {
  const std::size_t darts = m.num_darts();
  std::vector<Dart> sigma(2 * darts);
  for (Dart k = 0; k < darts; ++k) {
    sigma[2 * k] = 2 * m.sigma(k);
    // Around the added face vertex the corners are met against face order.
    sigma[2 * k + 1] = 2 * m.phi_inv(k) + 1;
  }
  return PlaneMap::build_paired(std::move(sigma), 2 * m.root());
}

std::vector<bool> even_class(const PlaneMap& q) {
  const auto dist = bfs_distances(q, q.root_vertex());
  std::vector<bool> even(dist.size());
  for (std::size_t v = 0; v < dist.size(); ++v) even[v] = dist[v] % 2 == 0;
  return even;
}

PlaneMap trivial_quad_to_map(const PlaneMap& q) {
  require_quadrangulation(q);
  const std::vector<bool> even = even_class(q);
  const std::size_t darts = q.num_darts();
  std::vector<Dart> id(darts, kNoDart);
  Dart next = 0;
  for (Dart d = 0; d < darts; ++d) {
    if (even[q.origin(d)] == even[q.target(d)]) {
      throw MapLabError(ErrorCode::kNotAQuadrangulation, "map is not bipartite");
    }
    if (even[q.origin(d)]) id[d] = next++;
  }
  std::vector<Dart> sigma(next);
  std::vector<Dart> alpha(next, kNoDart);
  for (Dart d = 0; d < darts; ++d) {
    if (id[d] != kNoDart) sigma[id[d]] = id[q.sigma(d)];
  }
  for (FaceId f = 0; f < q.num_faces(); ++f) {
    Dart first = kNoDart;
    for (Dart y : q.face_darts(f)) {
      if (even[q.origin(y)]) continue;
      const Dart mate = id[q.alpha(y)];
      if (first == kNoDart) {
        first = mate;
      } else {
        alpha[first] = mate;
        alpha[mate] = first;
      }
    }
  }
  return PlaneMap::build(std::move(sigma), std::move(alpha), id[q.root()]);
}

// ---------------------------------------------------------------------------
// Face rules.

FaceClassification classify_faces(const PointedPlaneMap& q, const FaceRules& rules) {
  const PlaneMap& map = q.map();
  require_quadrangulation(map);
  const std::size_t count = map.num_faces();
  FaceClassification out;
  out.kind.resize(count);
  out.red.resize(count);
  out.green.resize(count);
  out.special.assign(count, kNoDart);
  for (FaceId f = 0; f < count; ++f) {
    const auto darts = map.face_darts(f);
    std::array<long, 4> lab{};
    for (int k = 0; k < 4; ++k) lab[k] = q.l_plus(map.origin(darts[k]));
    for (int k = 0; k < 4; ++k) {
      if (std::labs(lab[(k + 1) % 4] - lab[k]) != 1) {
        throw MapLabError(ErrorCode::kNotAQuadrangulation,
                          "face " + std::to_string(f) + " has an edge between equal labels");
      }
    }
    auto at = [&](int k) { return darts[static_cast<std::size_t>(((k % 4) + 4) % 4)]; };
    const int low = static_cast<int>(std::min_element(lab.begin(), lab.end()) - lab.begin());
    const bool simple = lab[(low + 2) % 4] == lab[low] + 2;
    if (simple) {
      const int high = low + 2;
      out.kind[f] = FaceKind::kSimple;
      // Face darts run counterclockwise around the face, so the clockwise
      // neighbour of a corner is the previous one.
      out.red[f] = {at(high), rules.red_simple_clockwise ? at(high - 1) : at(high + 1)};
      out.green[f] = {at(low), rules.green_simple_clockwise ? at(low - 1) : at(low + 1)};
      out.special[f] = rules.green_simple_clockwise ? at(low - 1) : at(low);
    } else {
      out.kind[f] = FaceKind::kConfluent;
      const FaceArc low_pair{at(low), at(low + 2)};
      const FaceArc high_pair{at(low + 1), at(low + 3)};
      out.red[f] = rules.red_confluent_high ? high_pair : low_pair;
      out.green[f] = rules.green_confluent_low ? low_pair : high_pair;
    }
  }
  return out;
}

std::vector<bool> local_maxima(const PointedPlaneMap& q) {
  const PlaneMap& map = q.map();
  std::vector<bool> is_max(map.num_vertices(), true);
  for (VertexId v = 0; v < map.num_vertices(); ++v) {
    for (Dart d : map.darts_around(v)) {
      if (q.l_plus(map.target(d)) >= q.l_plus(v)) {
        is_max[v] = false;
        break;
      }
    }
  }
  return is_max;
}

// ---------------------------------------------------------------------------
// CVS.

std::size_t successor(std::span<const int> label, std::size_t i) {
  if (label.size() < 3 || i + 1 >= label.size()) {
    throw MapLabError(ErrorCode::kIndexOutOfRange, "successor index " + std::to_string(i));
  }
  const std::size_t period = label.size() - 1;
  const int wanted = label[i] - 1;
  for (std::size_t j = i + 1; j < i + 1 + period; ++j) {
    if (label[j % period] == wanted) return j;
  }
  return kInfinity;
}

std::vector<std::size_t> successor_corners(std::span<const int> label) {
  const std::size_t period = label.size() - 1;
  const auto [lo_it, hi_it] = std::minmax_element(label.begin(), label.begin() + period);
  const int lo = *lo_it;
  std::vector<std::size_t> next(static_cast<std::size_t>(*hi_it - lo) + 1, kInfinity);
  std::vector<std::size_t> succ(period, kInfinity);
  for (std::size_t k = 2 * period; k-- > 0;) {
    const int lab = label[k % period];
    if (k < period && lab > lo) succ[k] = next[static_cast<std::size_t>(lab - 1 - lo)] % period;
    next[static_cast<std::size_t>(lab - lo)] = k;
  }
  return succ;
}

CvsQuadrangulation cvs_inverse(const WellLabeledTree& tree, Epsilon eps) {
  const std::size_t n = tree.num_edges();
  if (n == 0) throw MapLabError(ErrorCode::kInvalidTree, "the tree needs at least one edge");
  const ContourLabelProcess process = contour_label_process(tree);
  const std::size_t period = 2 * n;
  std::vector<std::size_t> succ = successor_corners(process.label);

  // Arcs arriving at each corner, ordered clockwise: the arc from the nearest
  // corner behind comes first.
  std::vector<std::uint32_t> in_offsets(period + 1, 0);
  for (std::size_t j = 0; j < period; ++j) {
    if (succ[j] != kInfinity) ++in_offsets[succ[j] + 1];
  }
  for (std::size_t c = 0; c < period; ++c) in_offsets[c + 1] += in_offsets[c];
  std::vector<std::uint32_t> in_arcs(in_offsets.back());
  {
    std::vector<std::uint32_t> cursor(in_offsets.begin(), in_offsets.end() - 1);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = period; j-- > 0;) {
        if (succ[j] == kInfinity || (j < succ[j]) != (pass == 0)) continue;
        in_arcs[cursor[succ[j]]++] = static_cast<std::uint32_t>(j);
      }
    }
  }

  // Corners of each tree vertex in contour order.
  const std::size_t nv = tree.num_vertices();
  std::vector<std::uint32_t> corner_offsets(nv + 1, 0);
  for (std::size_t i = 0; i < period; ++i) ++corner_offsets[process.vertex[i] + 1];
  for (std::size_t v = 0; v < nv; ++v) corner_offsets[v + 1] += corner_offsets[v];
  std::vector<std::uint32_t> corners(period);
  {
    std::vector<std::uint32_t> cursor(corner_offsets.begin(), corner_offsets.end() - 1);
    for (std::size_t i = 0; i < period; ++i) {
      corners[cursor[process.vertex[i]]++] = static_cast<std::uint32_t>(i);
    }
  }

  std::vector<Dart> sigma(2 * period);
  std::vector<Dart> ring;
  for (std::size_t v = 0; v < nv; ++v) {
    ring.clear();
    for (std::uint32_t t = corner_offsets[v]; t < corner_offsets[v + 1]; ++t) {
      const std::uint32_t c = corners[t];
      for (std::uint32_t a = in_offsets[c]; a < in_offsets[c + 1]; ++a) {
        ring.push_back(2 * in_arcs[a] + 1);
      }
      ring.push_back(2 * c);
    }
    link_ring(sigma, ring);
  }
  // The added vertex meets the minimal corners in decreasing contour order.
  ring.clear();
  for (std::size_t m = period; m-- > 0;) {
    if (succ[m] == kInfinity) ring.push_back(static_cast<Dart>(2 * m + 1));
  }
  link_ring(sigma, ring);

  PlaneMap map = PlaneMap::build_paired(std::move(sigma), static_cast<Dart>(bit(eps)));
  const VertexId v_star = map.origin(ring.front());
  std::vector<VertexId> correspondence(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    correspondence[v] = map.origin(2 * corners[corner_offsets[v]]);
  }
  return {PointedPlaneMap(std::move(map), v_star), CvsImage{tree, eps, std::move(correspondence)},
          std::move(succ)};
}

namespace {

// Rotation system of the arcs drawn in the faces: arcs leaving the corners
// around a vertex inherit the clockwise order of those corners.
struct ArcSystem {
  std::vector<Dart> at_corner;   // dart of q -> arc dart leaving that corner
  std::vector<Dart> corner_of;   // arc dart -> dart of q naming its corner
  std::vector<Dart> sigma;       // rotation of arc darts
};

ArcSystem arc_system(const PlaneMap& q, const std::vector<FaceArc>& arcs) {
  ArcSystem sys;
  sys.at_corner.assign(q.num_darts(), kNoDart);
  sys.corner_of.assign(2 * arcs.size(), kNoDart);
  sys.sigma.assign(2 * arcs.size(), kNoDart);
  for (std::size_t f = 0; f < arcs.size(); ++f) {
    const Dart out = static_cast<Dart>(2 * f);
    sys.at_corner[arcs[f].from] = out;
    sys.at_corner[arcs[f].to] = out + 1;
    sys.corner_of[out] = arcs[f].from;
    sys.corner_of[out + 1] = arcs[f].to;
  }
  std::vector<Dart> ring;
  for (VertexId v = 0; v < q.num_vertices(); ++v) {
    ring.clear();
    for (Dart d : q.darts_around(v)) {
      if (sys.at_corner[d] != kNoDart) ring.push_back(sys.at_corner[d]);
    }
    link_ring(sys.sigma, ring);
  }
  return sys;
}

Epsilon root_epsilon(const PointedPlaneMap& q) {
  return q.points_towards(q.map().root()) ? Epsilon::kTowards : Epsilon::kAway;
}

// Orientation of the root edge that points towards v*.
Dart downward_root(const PointedPlaneMap& q) {
  const Dart root = q.map().root();
  return q.points_towards(root) ? root : q.map().alpha(root);
}

}  // namespace

CvsImage cvs_forward(const PointedPlaneMap& q, const FaceRules& rules) {
  const PlaneMap& map = q.map();
  const FaceClassification faces = classify_faces(q, rules);
  const ArcSystem red = arc_system(map, faces.red);
  const std::size_t n = faces.red.size();
  for (Dart d : map.darts_around(q.v_star())) {
    if (red.at_corner[d] != kNoDart) {
      throw MapLabError(ErrorCode::kInvalidTree, "a red arc touches the pointed vertex");
    }
  }

  const Epsilon eps = root_epsilon(q);
  const Dart start = downward_root(q);
  Dart y = map.sigma(start);
  while (red.at_corner[y] == kNoDart) {
    if (y == start) throw MapLabError(ErrorCode::kInvalidTree, "no red arc at the root vertex");
    y = map.sigma(y);
  }

  PlaneMap red_map = [&] {
    try {
      return PlaneMap::build_paired(red.sigma, red.at_corner[y]);
    } catch (const MapLabError& err) {
      throw MapLabError(ErrorCode::kInvalidTree, std::string("red arcs: ") + err.what());
    }
  }();
  if (red_map.num_faces() != 1 || red_map.num_vertices() != n + 1) {
    throw MapLabError(ErrorCode::kInvalidTree, "red arcs do not form a plane tree");
  }

  // Contour of the red tree from its root corner.
  std::vector<VertexId> preorder(red_map.num_vertices(), kUnreachable);
  std::vector<VertexId> correspondence;
  std::vector<std::uint8_t> dyck;
  dyck.reserve(2 * n);
  auto q_vertex = [&](Dart tree_dart) { return map.origin(red.corner_of[tree_dart]); };
  Dart d = red_map.root();
  preorder[red_map.origin(d)] = 0;
  correspondence.push_back(q_vertex(d));
  for (std::size_t step = 0; step < 2 * n; ++step) {
    const VertexId w = red_map.target(d);
    if (preorder[w] == kUnreachable) {
      preorder[w] = static_cast<VertexId>(correspondence.size());
      correspondence.push_back(q_vertex(red_map.alpha(d)));
      dyck.push_back(1);
    } else {
      dyck.push_back(0);
    }
    d = red_map.phi(d);
  }
  const long base = q.l_plus(correspondence.front());
  std::vector<int> labels(correspondence.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    labels[v] = static_cast<int>(static_cast<long>(q.l_plus(correspondence[v])) - base);
  }
  return CvsImage{WellLabeledTree(std::move(dyck), std::move(labels)), eps,
                  std::move(correspondence)};
}

// ---------------------------------------------------------------------------
// AB.

AbImage ab_forward(const PointedPlaneMap& q, const FaceRules& rules) {
  const PlaneMap& map = q.map();
  FaceClassification faces = classify_faces(q, rules);
  ArcSystem green = arc_system(map, faces.green);

  const Epsilon eps = root_epsilon(q);
  const Dart root = green.at_corner[map.phi(downward_root(q))];
  if (root == kNoDart) {
    throw MapLabError(ErrorCode::kAssertionFailure, "no green arc at the head of the root edge");
  }
  PlaneMap m = PlaneMap::build_paired(green.sigma, root);

  std::vector<VertexId> correspondence(m.num_vertices());
  VertexId v_star = kUnreachable;
  for (VertexId u = 0; u < m.num_vertices(); ++u) {
    correspondence[u] = map.origin(green.corner_of[m.darts_around(u).front()]);
    if (correspondence[u] == q.v_star()) v_star = u;
  }
  if (v_star == kUnreachable) {
    throw MapLabError(ErrorCode::kAssertionFailure, "the pointed vertex is missing from the map");
  }
  return AbImage{PointedPlaneMap(std::move(m), v_star), eps, std::move(correspondence),
                 std::move(green.at_corner), std::move(green.corner_of), std::move(faces)};
}

// ---------------------------------------------------------------------------
// Geodesics.

GeodesicChain leftmost_geodesic(const PointedPlaneMap& q, Dart e) {
  const PlaneMap& map = q.map();
  if (e >= map.num_darts() || !q.points_towards(e)) {
    throw MapLabError(ErrorCode::kNotPointingTowards, "dart " + std::to_string(e));
  }
  GeodesicChain chain{e};
  chain.reserve(q.l_plus(map.origin(e)));
  Dart d = e;
  while (q.l_plus(map.target(d)) > 0) {
    Dart y = map.sigma(map.alpha(d));
    while (!q.points_towards(y)) y = map.sigma(y);
    chain.push_back(y);
    d = y;
  }
  return chain;
}

std::optional<Dart> is_special(const PointedPlaneMap& q, const AbImage& ab, Dart e) {
  if (e >= q.map().num_darts()) {
    throw MapLabError(ErrorCode::kIndexOutOfRange, "dart " + std::to_string(e));
  }
  if (ab.faces.special[q.map().face(e)] != e) return std::nullopt;
  return ab.green_at_corner[e];
}

std::size_t d_circ_from_chains(const GeodesicChain& a, const GeodesicChain& b) {
  std::size_t shared = 0;
  while (shared < a.size() && shared < b.size() &&
         a[a.size() - 1 - shared] == b[b.size() - 1 - shared]) {
    ++shared;
  }
  return a.size() + b.size() - 2 * shared;
}

std::size_t d_circ_q(const PointedPlaneMap& q, Dart e, Dart e2) {
  const GeodesicChain a = leftmost_geodesic(q, e);
  const GeodesicChain b = leftmost_geodesic(q, e2);
  return d_circ_from_chains(a, b);
}

namespace {

constexpr int kNoLabel = std::numeric_limits<int>::max();

// oij / oji: minimum label over the forward cyclic corner interval [i, j)
// (resp. [j, i)). The left-most geodesics from e_i and e_j share their arcs
// below label max(min(oij, lj), min(oji, li)); the +2 is dropped when one
// geodesic passes through the other's starting corner.
std::size_t d_circ_value(int li, int lj, int oij, int oji) {
  const int top = std::max(std::min(oij, lj), std::min(oji, li));
  const bool suffix = (lj < li && oij > lj) || (li < lj && oji > li);
  return static_cast<std::size_t>(li + lj - 2 * top + (suffix ? 0 : 2));
}

std::size_t contour_period(std::span<const int> label) {
  if (label.size() < 3) {
    throw MapLabError(ErrorCode::kIndexOutOfRange, "label process of a tree with no edge");
  }
  return label.size() - 1;
}

}  // namespace

std::size_t d_circ_formula(std::span<const int> label, std::size_t i, std::size_t j) {
  const std::size_t period = contour_period(label);
  if (i > period || j > period) {
    throw MapLabError(ErrorCode::kIndexOutOfRange,
                      "indices " + std::to_string(i) + ", " + std::to_string(j));
  }
  i %= period;
  j %= period;
  if (i == j) return 0;
  auto open_min = [&](std::size_t a, std::size_t b) {
    int m = kNoLabel;
    for (std::size_t k = a; k != b; k = (k + 1) % period) m = std::min(m, label[k]);
    return m;
  };
  return d_circ_value(label[i], label[j], open_min(i, j), open_min(j, i));
}

std::vector<std::uint32_t> d_circ_row(std::span<const int> label, std::size_t i) {
  const std::size_t period = contour_period(label);
  if (i > period) throw MapLabError(ErrorCode::kIndexOutOfRange, "index " + std::to_string(i));
  i %= period;
  std::vector<int> prefix(period), suffix(period), forward(period, kNoLabel),
      backward(period, kNoLabel);
  prefix[0] = label[0];
  for (std::size_t k = 1; k < period; ++k) prefix[k] = std::min(prefix[k - 1], label[k]);
  suffix[period - 1] = label[period - 1];
  for (std::size_t k = period - 1; k-- > 0;) suffix[k] = std::min(suffix[k + 1], label[k]);
  // forward[k] = min over [i, k] for k >= i; backward[k] = min over [k, i) for k < i.
  forward[i] = label[i];
  for (std::size_t k = i + 1; k < period; ++k) forward[k] = std::min(forward[k - 1], label[k]);
  if (i > 0) {
    backward[i - 1] = label[i - 1];
    for (std::size_t k = i - 1; k-- > 0;) backward[k] = std::min(backward[k + 1], label[k]);
  }
  const int before_i = i == 0 ? kNoLabel : prefix[i - 1];

  std::vector<std::uint32_t> row(period + 1);
  for (std::size_t j = 0; j < period; ++j) {
    if (j == i) continue;
    int oij, oji;
    if (j > i) {
      oij = forward[j - 1];
      oji = std::min(suffix[j], before_i);
    } else {
      oij = j == 0 ? suffix[i] : std::min(suffix[i], prefix[j - 1]);
      oji = backward[j];
    }
    row[j] = static_cast<std::uint32_t>(d_circ_value(label[i], label[j], oij, oji));
  }
  row[period] = row[0];
  return row;
}

}  // namespace maplab
