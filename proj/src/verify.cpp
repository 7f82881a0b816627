#include "maplab/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "maplab/error.hpp"

namespace maplab {

BigInt catalan(std::size_t n) {
  BigInt c = 1;
  for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

namespace {

BigInt power_of_three(std::size_t n) {
  BigInt p = 1;
  for (std::size_t k = 0; k < n; ++k) p *= 3;
  return p;
}

BigInt central_binomial(std::size_t n) { return catalan(n) * (n + 1); }

}  // namespace

BigInt count_trees(std::size_t n) { return power_of_three(n) * catalan(n); }

BigInt count_rooted_maps(std::size_t n) {
  return 2 * power_of_three(n) * central_binomial(n) / ((n + 2) * (n + 1));
}

BigInt count_pointed_maps(std::size_t n) {
  return power_of_three(n) * central_binomial(n) / (n + 1);
}

bool CertifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

const CheckResult* CertifyReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

enum Check : std::size_t {
  kCvsRoundtrip,
  kQuadrangulation,
  kArcsTowards,
  kTrivialRoundtrip,
  kDualInvolution,
  kAbStructure,
  kDistanceIdentity,
  kFaceMaxima,
  kLeftmostSuccessor,
  kSpecialChains,
  kDCircFormula,
  kBranchBound,
  kContourBound,
  kTreeMaxima,
  kGreenDegree,
  kNumInstanceChecks
};

constexpr std::array<const char*, kNumInstanceChecks> kInstanceCheckNames = {
    "cvs_roundtrip",
    "quadrangulation",
    "cvs_arcs_point_towards",
    "trivial_roundtrip",
    "dual_involution",
    "ab_structure",
    "distance_identity",
    "ab_face_contains_one_max",
    "leftmost_geodesic_is_successor_chain",
    "special_chains",
    "d_circ_formula",
    "branch_chain_bound",
    "contour_distance_bound",
    "tree_maxima_match",
    "green_degree",
};

using Key = std::vector<std::uint32_t>;

struct InstanceOutcome {
  std::array<std::uint64_t, kNumInstanceChecks> checked{};
  std::array<std::uint64_t, kNumInstanceChecks> failed{};
  std::array<std::string, kNumInstanceChecks> detail;

  Key pointed_key;
  Key rooted_key;
  Key map_key;
  Key dual_key;
  std::vector<Key> map_pointings;  // the trivial map pointed at each vertex
  bool has_ab = false;
  Key ab_pointed_key;

  void record(Check c, bool ok, const std::function<std::string()>& what) {
    ++checked[c];
    if (!ok) {
      if (failed[c] == 0) detail[c] = what();
      ++failed[c];
    }
  }

  void record(Check c, bool ok, const char* what) {
    record(c, ok, [what] { return std::string(what); });
  }

  // Runs body; any exception counts as one failure of check c.
  void guard(Check c, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& err) {
      const std::string message = err.what();
      record(c, false, [&] { return message; });
    }
  }
};

std::string pair_text(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

void check_instance(const WellLabeledTree& tree, Epsilon eps, bool full, const FaceRules& rules,
                    InstanceOutcome& out) {
  const std::size_t n = tree.num_edges();
  const CvsQuadrangulation built = cvs_inverse(tree, eps);
  const PointedPlaneMap& q = built.quad;
  const PlaneMap& qm = q.map();

  {
    bool ok = qm.num_faces() == n && qm.num_vertices() == n + 2;
    for (FaceId f = 0; f < qm.num_faces(); ++f) ok = ok && qm.face_degree(f) == 4;
    out.record(kQuadrangulation, ok, "not a quadrangulation with n faces and n + 2 vertices");
  }
  {
    bool ok = true;
    for (std::size_t i = 0; i < 2 * n; ++i) ok = ok && q.points_towards(built.arc(i));
    const auto& labels = tree.labels();
    const int low = *std::min_element(labels.begin(), labels.end());
    std::vector<bool> seen(qm.num_vertices(), false);
    for (std::size_t v = 0; v < labels.size(); ++v) {
      const VertexId w = built.image.vertex_correspondence[v];
      ok = ok && w != q.v_star() && !seen[w] &&
           static_cast<long>(q.l_plus(w)) == labels[v] - low + 1;
      seen[w] = true;
    }
    out.record(kArcsTowards, ok, "arc not pointing towards v* or label shift broken");
  }
  out.guard(kCvsRoundtrip, [&] {
    const CvsImage back = cvs_forward(q, rules);
    out.record(kCvsRoundtrip,
               back.tree == tree && back.eps == eps &&
                   back.vertex_correspondence == built.image.vertex_correspondence,
               [&] { return "cvs_forward returned\n" + write_tree_text(back.tree); });
  });

  out.pointed_key = canonical_key(q);
  out.rooted_key = canonical_key(qm);

  std::optional<PlaneMap> m0;
  out.guard(kTrivialRoundtrip, [&] {
    m0 = trivial_quad_to_map(qm);
    const auto even = even_class(qm);
    const auto even_count = static_cast<std::size_t>(std::count(even.begin(), even.end(), true));
    out.record(kTrivialRoundtrip,
               isomorphic(trivial_map_to_quad(*m0), qm) && m0->num_vertices() == even_count &&
                   m0->num_edges() == n,
               "trivial bijection does not roundtrip");
    out.map_key = canonical_key(*m0);
  });
  if (!full) return;

  if (m0) {
    const PlaneMap d = dual(*m0);
    bool ok = dual(d) == *m0 && d.num_edges() == m0->num_edges() &&
              d.num_vertices() == m0->num_faces() && d.num_faces() == m0->num_vertices();
    std::vector<std::size_t> a, b;
    for (VertexId v = 0; v < d.num_vertices(); ++v) a.push_back(d.vertex_degree(v));
    for (FaceId f = 0; f < m0->num_faces(); ++f) b.push_back(m0->face_degree(f));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    out.record(kDualInvolution, ok && a == b, "dual is not an involution");
    out.dual_key = canonical_key(d);
    for (VertexId v = 0; v < m0->num_vertices(); ++v) {
      out.map_pointings.push_back(canonical_key(PointedPlaneMap(*m0, v)));
    }
  }

  std::optional<AbImage> ab;
  const std::vector<bool> vmax = local_maxima(q);
  const auto max_count = static_cast<std::size_t>(std::count(vmax.begin(), vmax.end(), true));
  out.guard(kAbStructure, [&] {
    ab = ab_forward(q, rules);
    const PlaneMap& m = ab->map.map();
    bool ok = m.num_edges() == n && m.num_vertices() == qm.num_vertices() - max_count &&
              m.num_faces() == max_count && ab->eps == eps;
    std::vector<bool> seen(qm.num_vertices(), false);
    for (VertexId u = 0; u < m.num_vertices(); ++u) {
      const VertexId w = ab->vertex_correspondence[u];
      ok = ok && !vmax[w] && !seen[w];
      seen[w] = true;
    }
    ok = ok && ab->vertex_correspondence[ab->map.v_star()] == q.v_star();
    const Dart root = qm.root();
    const VertexId expected_root =
        eps == Epsilon::kTowards ? qm.target(root) : qm.origin(root);
    ok = ok && ab->vertex_correspondence[m.root_vertex()] == expected_root;
    out.record(kAbStructure, ok, "AB map has the wrong size, vertices or root");
  });
  if (ab) {
    out.has_ab = true;
    out.ab_pointed_key = canonical_key(ab->map);
  }

  const auto tree_max = broad_local_maxima(tree);
  {
    std::vector<bool> mapped(qm.num_vertices(), false);
    for (VertexId v : tree_max) mapped[built.image.vertex_correspondence[v]] = true;
    out.record(kTreeMaxima, mapped == vmax, "tree maxima differ from the local maxima of q");
  }

  // Left-most geodesics of every arc against the successor chains.
  std::vector<GeodesicChain> chains(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    chains[i] = leftmost_geodesic(q, built.arc(i));
    GeodesicChain expected;
    for (std::size_t c = i; c != kInfinity; c = built.successor[c]) expected.push_back(built.arc(c));
    out.record(kLeftmostSuccessor, chains[i] == expected,
               [&] { return "arc " + std::to_string(i); });
  }
  const ContourLabelProcess process = contour_label_process(tree);
  std::vector<std::vector<std::uint32_t>> d_circ(2 * n + 1);
  for (std::size_t i = 0; i <= 2 * n; ++i) {
    d_circ[i] = d_circ_row(process.label, i);
    for (std::size_t j = 0; j <= 2 * n; ++j) {
      const std::size_t geometric = d_circ_from_chains(chains[i % (2 * n)], chains[j % (2 * n)]);
      out.record(kDCircFormula,
                 d_circ[i][j] == geometric && d_circ_formula(process.label, i, j) == geometric,
                 [&] { return "pair " + pair_text(i, j); });
    }
  }
  if (!ab) return;

  const PlaneMap& m = ab->map.map();
  std::vector<VertexId> q_to_m(qm.num_vertices(), kUnreachable);
  for (VertexId u = 0; u < m.num_vertices(); ++u) q_to_m[ab->vertex_correspondence[u]] = u;

  const auto to_star = bfs_distances(m, ab->map.v_star());
  for (VertexId u = 0; u < m.num_vertices(); ++u) {
    out.record(kDistanceIdentity, to_star[u] == q.l_plus(ab->vertex_correspondence[u]),
               [&] { return "vertex " + std::to_string(u) + " of m"; });
  }

  // Each face of m sees exactly one local maximum, and vice versa. The green
  // arc from corner a to corner b of a q-face has the corners strictly
  // between b and a (in face order) on its left.
  {
    std::vector<std::set<VertexId>> max_in_face(m.num_faces());
    std::vector<std::set<FaceId>> face_of_max(qm.num_vertices());
    for (Dart g = 0; g < m.num_darts(); ++g) {
      const FaceId f = g / 2;
      const auto darts = qm.face_darts(f);
      const FaceArc& arc = ab->faces.green[f];
      const Dart from = g % 2 == 0 ? arc.from : arc.to;
      const Dart to = g % 2 == 0 ? arc.to : arc.from;
      const auto pos = [&](Dart y) {
        return static_cast<std::size_t>(std::find(darts.begin(), darts.end(), y) - darts.begin());
      };
      const std::size_t a = pos(from);
      for (std::size_t p = (pos(to) + 1) % 4; p != a; p = (p + 1) % 4) {
        const VertexId w = qm.origin(darts[p]);
        if (vmax[w]) {
          max_in_face[m.face(g)].insert(w);
          face_of_max[w].insert(m.face(g));
        }
      }
    }
    for (FaceId f = 0; f < m.num_faces(); ++f) {
      out.record(kFaceMaxima, max_in_face[f].size() == 1,
                 [&] { return "face " + std::to_string(f) + " of m"; });
    }
    for (VertexId w = 0; w < qm.num_vertices(); ++w) {
      if (vmax[w]) out.record(kFaceMaxima, face_of_max[w].size() == 1, "maximum in two faces");
    }
  }

  // Darts of q pointing towards v* with head v versus the degree of v in m.
  {
    std::vector<std::size_t> heads(qm.num_vertices(), 0);
    for (Dart d = 0; d < qm.num_darts(); ++d) {
      if (q.points_towards(d)) ++heads[qm.target(d)];
    }
    for (VertexId u = 0; u < m.num_vertices(); ++u) {
      out.record(kGreenDegree, heads[ab->vertex_correspondence[u]] == m.vertex_degree(u),
                 [&] { return "vertex " + std::to_string(u) + " of m"; });
    }
  }

  // Every dart after the first step of a left-most geodesic is special, and
  // its green arc joins the same vertices in the same direction.
  for (const auto& chain : chains) {
    for (std::size_t k = 1; k < chain.size(); ++k) {
      const auto g = is_special(q, *ab, chain[k]);
      const bool ok = g && ab->vertex_correspondence[m.origin(*g)] == qm.origin(chain[k]) &&
                      ab->vertex_correspondence[m.target(*g)] == qm.target(chain[k]);
      out.record(kSpecialChains, ok, [&] { return "dart " + std::to_string(chain[k]); });
    }
  }

  std::vector<std::vector<std::uint32_t>> dm(m.num_vertices());
  for (VertexId u = 0; u < m.num_vertices(); ++u) dm[u] = bfs_distances(m, u);
  const std::size_t delta = max_face_degree(m);

  // Darts pointing towards v* are exactly the arcs 2i.
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const VertexId u = q_to_m[qm.origin(built.arc(i))];
    if (u == kUnreachable) continue;
    for (std::size_t j = 0; j < 2 * n; ++j) {
      const VertexId u2 = q_to_m[qm.origin(built.arc(j))];
      if (u2 == kUnreachable) continue;
      out.record(kBranchBound, dm[u][u2] <= d_circ[i][j] + delta,
                 [&] { return "arcs " + pair_text(i, j); });
    }
  }
  for (std::size_t i = 0; i <= 2 * n; ++i) {
    const VertexId u = q_to_m[built.tilde_vertex(i)];
    for (std::size_t j = 0; j <= 2 * n; ++j) {
      const VertexId u2 = q_to_m[built.tilde_vertex(j)];
      const bool ok = u != kUnreachable && u2 != kUnreachable &&
                      dm[u][u2] <= d_circ[i][j] + delta;
      out.record(kContourBound, ok, [&] { return "indices " + pair_text(i, j); });
    }
  }
}

struct GlobalCheck {
  std::string name;
  bool ok;
  std::string detail;
  std::optional<std::uint64_t> instance;
};

// Smallest index whose key was already produced by an earlier index.
std::optional<std::uint64_t> first_duplicate(const std::vector<const Key*>& keys) {
  std::set<Key> seen;
  for (std::uint64_t k = 0; k < keys.size(); ++k) {
    if (keys[k] == nullptr) continue;
    if (!seen.insert(*keys[k]).second) return k;
  }
  return std::nullopt;
}

std::string count_text(std::uint64_t got, const BigInt& want) {
  return "enumerated " + std::to_string(got) + ", formula " + want.str();
}

}  // namespace

CertifyReport certify(std::size_t n, const CertifyOptions& options) {
  if (n == 0 || n > options.roundtrip_bound) {
    throw MapLabError(ErrorCode::kBoundExceeded,
                      "certify needs 1 <= n <= " + std::to_string(options.roundtrip_bound));
  }
  const bool full = n <= options.full_bound;
  const std::vector<WellLabeledTree> trees = enumerate_trees(n, options.roundtrip_bound);
  const std::size_t instances = 2 * trees.size();
  std::vector<InstanceOutcome> outcomes(instances);

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    constexpr std::size_t kChunk = 16;
    for (;;) {
      const std::size_t begin = cursor.fetch_add(kChunk);
      if (begin >= instances) return;
      for (std::size_t k = begin; k < std::min(begin + kChunk, instances); ++k) {
        check_instance(trees[k / 2], static_cast<Epsilon>(k % 2), full, options.rules,
                       outcomes[k]);
      }
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  CertifyReport report;
  report.n = n;
  report.full = full;
  CountingLedger& ledger = report.ledger;
  ledger.n = n;
  ledger.trees = count_trees(n);
  ledger.maps_pointed = count_pointed_maps(n);
  ledger.quads_pointed = 2 * ledger.maps_pointed;
  ledger.maps = count_rooted_maps(n);
  ledger.trees_enumerated = trees.size();
  ledger.cvs_images = instances;

  for (std::size_t c = 0; c < kNumInstanceChecks; ++c) {
    CheckResult result;
    result.name = kInstanceCheckNames[c];
    for (std::size_t k = 0; k < instances; ++k) {
      result.checked += outcomes[k].checked[c];
      result.failures += outcomes[k].failed[c];
      if (outcomes[k].failed[c] > 0 && !result.first_failure) {
        result.first_failure = CheckFailure{k, outcomes[k].detail[c]};
      }
    }
    if (!full && c >= kDualInvolution) continue;
    report.checks.push_back(std::move(result));
  }

  std::vector<GlobalCheck> global;
  auto keys_of = [&](Key InstanceOutcome::*member, bool need_ab) {
    std::vector<const Key*> keys(instances, nullptr);
    for (std::size_t k = 0; k < instances; ++k) {
      const Key& key = outcomes[k].*member;
      if ((!need_ab || outcomes[k].has_ab) && !key.empty()) keys[k] = &key;
    }
    return keys;
  };
  auto distinct = [](const std::vector<const Key*>& keys) {
    std::set<Key> s;
    for (const Key* k : keys) {
      if (k) s.insert(*k);
    }
    return s;
  };

  global.push_back({"tree_count", BigInt(trees.size()) == ledger.trees,
                    count_text(trees.size(), ledger.trees), std::nullopt});

  const auto pointed = keys_of(&InstanceOutcome::pointed_key, false);
  ledger.distinct_pointed_quads = distinct(pointed).size();
  global.push_back({"pointed_quad_count",
                    BigInt(ledger.distinct_pointed_quads) == ledger.quads_pointed &&
                        ledger.distinct_pointed_quads == instances,
                    count_text(ledger.distinct_pointed_quads, ledger.quads_pointed),
                    first_duplicate(pointed)});

  const auto rooted = distinct(keys_of(&InstanceOutcome::rooted_key, false));
  ledger.distinct_rooted_quads = rooted.size();
  global.push_back({"rooted_quad_count", BigInt(rooted.size()) == ledger.maps,
                    count_text(rooted.size(), ledger.maps), std::nullopt});

  const auto maps = distinct(keys_of(&InstanceOutcome::map_key, false));
  ledger.distinct_maps = maps.size();
  global.push_back({"map_count", BigInt(maps.size()) == ledger.maps,
                    count_text(maps.size(), ledger.maps), std::nullopt});

  if (full) {
    std::vector<Key> ab_keys(instances);
    std::vector<const Key*> ab_ptrs(instances, nullptr);
    for (std::size_t k = 0; k < instances; ++k) {
      if (!outcomes[k].has_ab) continue;
      ab_keys[k] = outcomes[k].ab_pointed_key;
      ab_keys[k].push_back(static_cast<std::uint32_t>(k % 2));
      ab_ptrs[k] = &ab_keys[k];
    }
    const auto ab_distinct = distinct(ab_ptrs);
    ledger.distinct_ab_images = ab_distinct.size();
    global.push_back({"ab_injective", ab_distinct.size() == instances,
                      std::to_string(ab_distinct.size()) + " distinct images of " +
                          std::to_string(instances) + " pointed quadrangulations",
                      first_duplicate(ab_ptrs)});

    const auto ab_pointed = distinct(keys_of(&InstanceOutcome::ab_pointed_key, true));
    ledger.distinct_pointed_maps = ab_pointed.size();
    std::set<Key> all_pointings;
    for (const auto& o : outcomes) all_pointings.insert(o.map_pointings.begin(), o.map_pointings.end());
    global.push_back({"ab_image",
                      ab_pointed == all_pointings &&
                          BigInt(ab_pointed.size()) == ledger.maps_pointed,
                      count_text(ab_pointed.size(), ledger.maps_pointed) +
                          (ab_pointed == all_pointings ? "" : "; image differs from pointed maps"),
                      std::nullopt});

    std::optional<std::uint64_t> dual_miss;
    for (std::size_t k = 0; k < instances && !dual_miss; ++k) {
      if (!outcomes[k].dual_key.empty() && !maps.contains(outcomes[k].dual_key)) dual_miss = k;
    }
    global.push_back({"dual_closed", !dual_miss.has_value(),
                      "duals of enumerated maps are enumerated maps", dual_miss});
  }

  for (auto& g : global) {
    CheckResult result;
    result.name = g.name;
    result.checked = 1;
    result.failures = g.ok ? 0 : 1;
    if (!g.ok) result.first_failure = CheckFailure{g.instance.value_or(0), g.detail};
    report.checks.push_back(std::move(result));
  }

  std::optional<std::uint64_t> worst;
  for (const auto& c : report.checks) {
    if (c.first_failure && (!worst || c.first_failure->instance < *worst)) {
      worst = c.first_failure->instance;
    }
  }
  if (worst) {
    const WellLabeledTree& tree = trees[*worst / 2];
    const auto eps = static_cast<Epsilon>(*worst % 2);
    InstanceBundle bundle = [&] {
      try {
        return make_bundle(tree, eps, options.rules);
      } catch (const MapLabError&) {
        return make_bundle(tree, eps);
      }
    }();
    for (const auto& c : report.checks) {
      if (c.first_failure && c.first_failure->instance == *worst) {
        bundle.failed_check = c.name;
        bundle.detail = c.first_failure->detail;
        break;
      }
    }
    report.counterexample = std::move(bundle);
  }
  return report;
}

ExactVertexLaw exact_vertex_law(std::size_t n, std::size_t bound) {
  ExactVertexLaw law;
  law.n = n;
  std::size_t count = 0;
  TreeEnumerator trees(n, bound);
  while (auto tree = trees.next()) {
    for (Epsilon eps : {Epsilon::kTowards, Epsilon::kAway}) {
      const CvsQuadrangulation built = cvs_inverse(*tree, eps);
      const BigRational v(trivial_quad_to_map(built.quad.map()).num_vertices());
      law.mean_vertices += v;
      law.mean_vertices_squared += v * v;
      const BigRational dev = 2 * v / BigRational(n + 2) - 1;
      law.tv += dev < 0 ? BigRational(-dev) : dev;
      ++count;
    }
  }
  law.mean_vertices /= count;
  law.mean_vertices_squared /= count;
  law.tv /= count;
  return law;
}

ExactRerootLaws exact_reroot_laws(std::size_t n, std::size_t bound) {
  ExactRerootLaws laws;
  laws.n = n;
  laws.two_uniform.assign(n + 1, 0);
  laws.from_point.assign(n + 1, 0);
  std::size_t count = 0;
  TreeEnumerator trees(n, bound);
  while (auto tree = trees.next()) {
    for (Epsilon eps : {Epsilon::kTowards, Epsilon::kAway}) {
      const AbImage ab = ab_forward(cvs_inverse(*tree, eps).quad);
      const PlaneMap& m = ab.map.map();
      const std::size_t nv = m.num_vertices();
      const BigRational single(1, nv);
      const BigRational pair(1, nv * nv);
      for (VertexId u = 0; u < nv; ++u) {
        laws.from_point[ab.map.l_plus(u)] += single;
        for (auto d : bfs_distances(m, u)) laws.two_uniform[d] += pair;
      }
      ++count;
    }
  }
  for (auto& p : laws.two_uniform) p /= count;
  for (auto& p : laws.from_point) p /= count;
  return laws;
}

std::string report_to_json(const CertifyReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = "certify_report";
  doc["n"] = report.n;
  doc["full"] = report.full;
  const CountingLedger& l = report.ledger;
  doc["ledger"] = {
      {"trees_formula", l.trees.str()},
      {"trees_enumerated", l.trees_enumerated},
      {"cvs_images", l.cvs_images},
      {"quads_pointed_formula", l.quads_pointed.str()},
      {"distinct_pointed_quads", l.distinct_pointed_quads},
      {"maps_formula", l.maps.str()},
      {"distinct_rooted_quads", l.distinct_rooted_quads},
      {"distinct_maps", l.distinct_maps},
      {"maps_pointed_formula", l.maps_pointed.str()},
      {"distinct_ab_images", l.distinct_ab_images},
      {"distinct_pointed_maps", l.distinct_pointed_maps},
  };
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json entry{{"name", c.name},
                       {"checked", c.checked},
                       {"failures", c.failures},
                       {"passed", c.passed()}};
    if (c.first_failure) {
      entry["first_failure"] = {{"instance", c.first_failure->instance},
                                {"tree_index", c.first_failure->instance / 2},
                                {"eps", c.first_failure->instance % 2},
                                {"detail", c.first_failure->detail}};
    }
    checks.push_back(std::move(entry));
  }
  doc["checks"] = std::move(checks);
  doc["passed"] = report.passed();
  return doc.dump(2) + "\n";
}

}  // namespace maplab
