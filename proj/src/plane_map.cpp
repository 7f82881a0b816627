#include "maplab/plane_map.hpp"

#include <algorithm>
#include <string>

#include "maplab/error.hpp"

namespace maplab {
namespace {

// Numbers the orbits of `perm` by smallest element and returns, per element,
// its orbit id; `offsets`/`members` receive the orbits in CSR layout, each
// orbit listed in permutation order from its smallest element.
std::vector<std::uint32_t> number_orbits(const std::vector<Dart>& perm,
                                         std::vector<std::uint32_t>& offsets,
                                         std::vector<Dart>& members) {
  const std::size_t size = perm.size();
  std::vector<std::uint32_t> orbit_of(size, kUnreachable);
  offsets.clear();
  members.clear();
  members.reserve(size);
  offsets.push_back(0);
  std::uint32_t next_id = 0;
  for (Dart start = 0; start < size; ++start) {
    if (orbit_of[start] != kUnreachable) continue;
    Dart d = start;
    do {
      orbit_of[d] = next_id;
      members.push_back(d);
      d = perm[d];
    } while (d != start);
    offsets.push_back(static_cast<std::uint32_t>(members.size()));
    ++next_id;
  }
  return orbit_of;
}

void check_permutation(const std::vector<Dart>& perm, const char* name) {
  std::vector<bool> seen(perm.size(), false);
  for (Dart image : perm) {
    if (image >= perm.size() || seen[image]) {
      throw MapLabError(ErrorCode::kInvalidPermutation,
                        std::string(name) + " is not a permutation of the darts");
    }
    seen[image] = true;
  }
}

}  // namespace

PlaneMap PlaneMap::build(std::vector<Dart> sigma, std::vector<Dart> alpha, Dart root) {
  if (sigma.size() != alpha.size() || sigma.empty() || sigma.size() % 2 != 0) {
    throw MapLabError(ErrorCode::kInvalidPermutation,
                      "sigma and alpha must act on the same even, nonzero number of darts");
  }
  check_permutation(sigma, "sigma");
  check_permutation(alpha, "alpha");
  for (Dart d = 0; d < alpha.size(); ++d) {
    if (alpha[d] == d || alpha[alpha[d]] != d) {
      throw MapLabError(ErrorCode::kInvalidInvolution,
                        "alpha is not a fixed-point-free involution at dart " + std::to_string(d));
    }
  }
  if (root >= sigma.size()) {
    throw MapLabError(ErrorCode::kIndexOutOfRange, "root dart out of range");
  }

  PlaneMap map;
  map.sigma_ = std::move(sigma);
  map.alpha_ = std::move(alpha);
  map.root_ = root;
  const std::size_t darts = map.sigma_.size();

  map.sigma_inv_.resize(darts);
  for (Dart d = 0; d < darts; ++d) map.sigma_inv_[map.sigma_[d]] = d;

  // Transitivity of <sigma, alpha>.
  std::vector<bool> reached(darts, false);
  std::vector<Dart> stack{0};
  reached[0] = true;
  std::size_t reached_count = 1;
  while (!stack.empty()) {
    Dart d = stack.back();
    stack.pop_back();
    for (Dart next : {map.sigma_[d], map.alpha_[d]}) {
      if (!reached[next]) {
        reached[next] = true;
        ++reached_count;
        stack.push_back(next);
      }
    }
  }
  if (reached_count != darts) {
    throw MapLabError(ErrorCode::kDisconnected, "sigma and alpha do not act transitively");
  }

  map.vertex_of_ = number_orbits(map.sigma_, map.vertex_offsets_, map.vertex_darts_);
  std::vector<Dart> phi(darts);
  for (Dart d = 0; d < darts; ++d) phi[d] = map.sigma_[map.alpha_[d]];
  map.face_of_ = number_orbits(phi, map.face_offsets_, map.face_darts_);

  const long euler = static_cast<long>(map.num_vertices()) - static_cast<long>(map.num_edges()) +
                     static_cast<long>(map.num_faces());
  if (euler != 2) {
    throw MapLabError(ErrorCode::kNonPlanar,
                      "Euler characteristic is " + std::to_string(euler) + ", expected 2");
  }
  return map;
}

PlaneMap PlaneMap::build_paired(std::vector<Dart> sigma, Dart root) {
  std::vector<Dart> alpha(sigma.size());
  for (Dart d = 0; d < alpha.size(); ++d) alpha[d] = d ^ 1u;
  return build(std::move(sigma), std::move(alpha), root);
}

PlaneMap PlaneMap::rerooted(Dart root) const {
  if (root >= num_darts()) throw MapLabError(ErrorCode::kIndexOutOfRange, "root dart out of range");
  PlaneMap copy = *this;
  copy.root_ = root;
  return copy;
}

std::vector<std::vector<Dart>> faces(const PlaneMap& map) {
  std::vector<std::vector<Dart>> out(map.num_faces());
  for (FaceId f = 0; f < map.num_faces(); ++f) {
    auto darts = map.face_darts(f);
    out[f].assign(darts.begin(), darts.end());
  }
  return out;
}

std::vector<std::uint32_t> bfs_distances(const PlaneMap& map, VertexId source) {
  if (source >= map.num_vertices()) {
    throw MapLabError(ErrorCode::kUnknownVertex, "vertex " + std::to_string(source));
  }
  std::vector<std::uint32_t> dist(map.num_vertices(), kUnreachable);
  std::vector<VertexId> queue;
  queue.reserve(map.num_vertices());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    for (Dart d : map.darts_around(v)) {
      const VertexId w = map.target(d);
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::size_t max_face_degree(const PlaneMap& map) {
  std::size_t best = 0;
  for (FaceId f = 0; f < map.num_faces(); ++f) best = std::max(best, map.face_degree(f));
  return best;
}

std::size_t max_vertex_degree(const PlaneMap& map) {
  std::size_t best = 0;
  for (VertexId v = 0; v < map.num_vertices(); ++v) best = std::max(best, map.vertex_degree(v));
  return best;
}

PlaneMap dual(const PlaneMap& map) {
  std::vector<Dart> sigma(map.num_darts());
  for (Dart d = 0; d < sigma.size(); ++d) sigma[d] = map.phi(d);
  return PlaneMap::build(std::move(sigma), map.alpha_permutation(), map.root());
}

PointedPlaneMap::PointedPlaneMap(PlaneMap map, VertexId v_star)
    : map_(std::move(map)), v_star_(v_star), l_plus_(bfs_distances(map_, v_star)) {}

CanonicalMap canonical_form(const PlaneMap& map) {
  const std::size_t darts = map.num_darts();
  std::vector<Dart> relabel(darts, kNoDart);
  std::vector<Dart> order;
  order.reserve(darts);
  auto assign = [&](Dart d) {
    relabel[d] = static_cast<Dart>(order.size());
    order.push_back(d);
    const Dart rev = map.alpha(d);
    relabel[rev] = static_cast<Dart>(order.size());
    order.push_back(rev);
  };
  assign(map.root());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Dart next = map.sigma(order[i]);
    if (relabel[next] == kNoDart) assign(next);
  }
  std::vector<Dart> sigma(darts);
  for (Dart d = 0; d < darts; ++d) sigma[relabel[d]] = relabel[map.sigma(d)];
  return {std::move(relabel), PlaneMap::build_paired(std::move(sigma), 0)};
}

std::vector<std::uint32_t> canonical_key(const PlaneMap& map) {
  const CanonicalMap canon = canonical_form(map);
  return canon.map.sigma_permutation();
}

std::vector<std::uint32_t> canonical_key(const PointedPlaneMap& pointed) {
  const CanonicalMap canon = canonical_form(pointed.map());
  const Dart some_dart = pointed.map().darts_around(pointed.v_star()).front();
  std::vector<std::uint32_t> key = canon.map.sigma_permutation();
  key.push_back(canon.map.origin(canon.relabel[some_dart]));
  return key;
}

bool isomorphic(const PlaneMap& a, const PlaneMap& b) {
  return a.num_darts() == b.num_darts() && canonical_key(a) == canonical_key(b);
}

}  // namespace maplab
