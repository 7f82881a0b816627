#include "maplab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "maplab/stats.hpp"

#ifndef MAPLAB_GIT_DESCRIBE
#define MAPLAB_GIT_DESCRIBE "unknown"
#endif

namespace maplab {

using nlohmann::ordered_json;

double label_scale(std::size_t n) { return std::pow(9.0 / (8.0 * static_cast<double>(n)), 0.25); }

double contour_scale(std::size_t n) { return 1.0 / std::sqrt(2.0 * static_cast<double>(n)); }

PointedSample sample_pointed_quad(std::size_t n, Rng& rng) {
  WellLabeledTree tree = sample_uniform_tree(n, rng);
  const Epsilon eps = rng.coin() ? Epsilon::kAway : Epsilon::kTowards;
  CvsQuadrangulation quad = cvs_inverse(tree, eps);
  return PointedSample{std::move(tree), eps, std::move(quad)};
}

PlaneMap sample_map(std::size_t n, Rng& rng) {
  return trivial_quad_to_map(sample_pointed_quad(n, rng).quad.quad.map());
}

void parallel_for(std::size_t reps, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> cursor{0};
  std::mutex mutex;
  std::size_t failed_rep = reps;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t rep = cursor.fetch_add(1);
      if (rep >= reps) return;
      {
        std::lock_guard lock(mutex);
        if (rep > failed_rep) return;
      }
      try {
        body(rep);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (rep < failed_rep) {
          failed_rep = rep;
          failure = std::current_exception();
        }
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  // Reps below failed_rep all ran, so the reported failure is the first one.
  if (failure) std::rethrow_exception(failure);
}

unsigned resolve_threads(std::optional<unsigned> requested) {
  if (requested) return std::max(1u, *requested);
  if (const char* env = std::getenv("MAPLAB_THREADS")) {
    const long value = std::strtol(env, nullptr, 10);
    if (value > 0) return static_cast<unsigned>(value);
  }
  return 1;
}

bool ExperimentResult::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

Rng rep_rng(const ExperimentParams& p, std::size_t n, std::size_t rep) {
  return Rng(derive_seed(p.seed, n, rep));
}

bool strictly_decreasing(const std::vector<double>& values) {
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (!(values[k] < values[k - 1])) return false;
  }
  return true;
}

ordered_json ks_json(const KsResult& ks) {
  return {{"statistic", ks.statistic},
          {"critical_value", ks.critical_value},
          {"p_value", ks.p_value},
          {"n1", ks.n1},
          {"n2", ks.n2},
          {"rejects", ks.rejects()}};
}

ordered_json summary_json(const SampleSummary& s) {
  return {{"count", s.count}, {"mean", s.mean},  {"variance", s.variance},
          {"std_error", s.std_error}, {"min", s.min}, {"max", s.max}};
}

struct Builder {
  const ExperimentParams& params;
  ExperimentResult result;

  Builder(const ExperimentParams& p, const std::string& header) : params(p) {
    result.id = p.id;
    result.csv = header + "\n";
    result.summary["experiment"] = p.id;
    result.summary["seed"] = p.seed;
    result.summary["reps"] = p.reps;
    result.summary["n_grid"] = p.n_grid;
    result.summary["alpha"] = p.alpha;
    result.summary["git_describe"] = MAPLAB_GIT_DESCRIBE;
    result.summary["per_n"] = ordered_json::array();
  }

  void verdict(const std::string& name, bool passed, ordered_json detail = {}) {
    result.verdicts.push_back({name, passed});
    ordered_json entry{{"name", name}, {"passed", passed}};
    if (!detail.is_null()) entry["detail"] = std::move(detail);
    result.summary["verdicts"].push_back(std::move(entry));
  }

  ExperimentResult finish() {
    result.summary["passed"] = result.passed();
    return std::move(result);
  }
};

// ---------------------------------------------------------------------------

ExperimentResult moments(const ExperimentParams& p) {
  Builder b(p, "n,rep,num_vertices");
  for (std::size_t n : p.n_grid) {
    std::vector<std::uint32_t> vertices(p.reps);
    parallel_for(p.reps, p.threads, [&](std::size_t rep) {
      Rng rng = rep_rng(p, n, rep);
      vertices[rep] = static_cast<std::uint32_t>(sample_map(n, rng).num_vertices());
    });
    std::vector<double> v(vertices.begin(), vertices.end()), sq;
    for (std::size_t rep = 0; rep < p.reps; ++rep) {
      b.result.csv += std::to_string(n) + "," + std::to_string(rep) + "," +
                      std::to_string(vertices[rep]) + "\n";
      const double r = 2.0 * v[rep] / static_cast<double>(n);
      sq.push_back(r * r);
    }
    const SampleSummary s = summarize(v);
    const SampleSummary s2 = summarize(sq);
    const double expected = (static_cast<double>(n) + 2.0) / 2.0;
    const double z = s.std_error > 0 ? (s.mean - expected) / s.std_error : 0.0;
    const double rel = std::abs(s2.mean - 1.0);
    b.result.summary["per_n"].push_back({{"n", n},
                                         {"num_vertices", summary_json(s)},
                                         {"expected_mean", expected},
                                         {"z_score", z},
                                         {"second_moment_ratio", s2.mean},
                                         {"second_moment_ratio_se", s2.std_error}});
    b.verdict("mean_within_4se_n" + std::to_string(n), std::abs(z) <= 4.0,
              {{"threshold_se", 4.0}, {"z_score", z}});
    // The second-moment limit is asymptotic; it is only judged for large n.
    if (n >= 1000) {
      b.verdict("second_moment_within_2pct_n" + std::to_string(n), rel <= 0.02,
                {{"threshold", 0.02}, {"relative_error", rel}});
    }
  }
  return b.finish();
}

ExperimentResult tv(const ExperimentParams& p) {
  Builder b(p, "n,rep,num_vertices,abs_dev");
  std::vector<double> means;
  for (std::size_t n : p.n_grid) {
    std::vector<std::uint32_t> vertices(p.reps);
    parallel_for(p.reps, p.threads, [&](std::size_t rep) {
      Rng rng = rep_rng(p, n, rep);
      vertices[rep] = static_cast<std::uint32_t>(sample_map(n, rng).num_vertices());
    });
    std::vector<double> dev;
    for (std::size_t rep = 0; rep < p.reps; ++rep) {
      const double d = std::abs(2.0 * vertices[rep] / (static_cast<double>(n) + 2.0) - 1.0);
      dev.push_back(d);
      b.result.csv += std::to_string(n) + "," + std::to_string(rep) + "," +
                      std::to_string(vertices[rep]) + "," + num(d) + "\n";
    }
    const SampleSummary s = summarize(dev);
    means.push_back(s.mean);
    b.result.summary["per_n"].push_back({{"n", n}, {"abs_dev", summary_json(s)}});
  }
  b.verdict("strictly_decreasing", strictly_decreasing(means), {{"means", means}});
  return b.finish();
}

ExperimentResult two_point(const ExperimentParams& p) {
  Builder b(p, "n,rep,index,d_q_scaled,d_m_scaled,offset");
  for (std::size_t n : p.n_grid) {
    struct Row {
      std::size_t index;
      std::uint32_t dq, dm;
    };
    std::vector<Row> rows(p.reps);
    parallel_for(p.reps, p.threads, [&](std::size_t rep) {
      Rng rng = rep_rng(p, n, rep);
      PointedSample sample = sample_pointed_quad(n, rng);
      const std::size_t i = rng.uniform_below(2 * n);
      const AbImage ab = ab_forward(sample.quad.quad);
      const PointedPlaneMap& q = sample.quad.quad;
      const VertexId vi = q.map().origin(sample.quad.arc(i));
      const VertexId tilde = sample.quad.tilde_vertex(i);
      VertexId u = kUnreachable;
      for (VertexId k = 0; k < ab.vertex_correspondence.size(); ++k) {
        if (ab.vertex_correspondence[k] == tilde) u = k;
      }
      const std::uint32_t dq = q.l_plus(vi);
      const std::uint32_t dm = u == kUnreachable ? kUnreachable : ab.map.l_plus(u);
      if (u == kUnreachable || dm != q.l_plus(tilde) || dq > dm + 1 || dm > dq + 1) {
        InstanceBundle bundle = make_bundle(sample.tree, sample.eps);
        bundle.failed_check = "two_point_offset";
        bundle.detail = "rep " + std::to_string(rep) + ", index " + std::to_string(i);
        throw ExperimentAssertion("two-point offset exceeds one", std::move(bundle));
      }
      rows[rep] = {i, dq, dm};
    });
    const double scale = label_scale(n);
    std::vector<double> a, c;
    std::uint32_t max_offset = 0;
    for (std::size_t rep = 0; rep < p.reps; ++rep) {
      const Row& r = rows[rep];
      const std::uint32_t offset = r.dq > r.dm ? r.dq - r.dm : r.dm - r.dq;
      max_offset = std::max(max_offset, offset);
      a.push_back(scale * r.dq);
      c.push_back(scale * r.dm);
      b.result.csv += std::to_string(n) + "," + std::to_string(rep) + "," +
                      std::to_string(r.index) + "," + num(scale * r.dq) + "," +
                      num(scale * r.dm) + "," + std::to_string(offset) + "\n";
    }
    // The empirical CDFs agree up to a shift of one grid step iff the sorted
    // samples differ by at most one step.
    std::sort(a.begin(), a.end());
    std::sort(c.begin(), c.end());
    double max_gap = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) max_gap = std::max(max_gap, std::abs(a[k] - c[k]));
    const KsResult ks = ks_two_sample(a, c, p.alpha);
    b.result.summary["per_n"].push_back({{"n", n},
                                         {"label_scale", scale},
                                         {"max_offset", max_offset},
                                         {"max_offset_scaled", scale * max_offset},
                                         {"max_quantile_gap", max_gap},
                                         {"ks_unshifted", ks_json(ks)}});
    b.verdict("offset_at_most_one_step_n" + std::to_string(n),
              max_offset <= 1 && max_gap <= scale * (1 + 1e-9),
              {{"max_offset_scaled", scale * max_offset}, {"label_scale", scale}});
  }
  return b.finish();
}

ExperimentResult isometry(const ExperimentParams& p) {
  Builder b(p,
            "n,rep,pairs,mean_defect,max_defect,contour_bound_violations,"
            "branch_bound_violations,delta");
  std::vector<double> mean_defects;
  std::uint64_t contour_pairs = 0, branch_pairs = 0;
  for (std::size_t n : p.n_grid) {
    struct Row {
      std::uint64_t pairs = 0, branch_pairs = 0;
      double defect_sum = 0.0, defect_max = 0.0;
      std::size_t delta = 0;
    };
    std::vector<Row> rows(p.reps);
    const double scale = label_scale(n);
    parallel_for(p.reps, p.threads, [&](std::size_t rep) {
      Rng rng = rep_rng(p, n, rep);
      PointedSample sample = sample_pointed_quad(n, rng);
      const PointedPlaneMap& q = sample.quad.quad;
      const PlaneMap& qm = q.map();
      const AbImage ab = ab_forward(q);
      const PlaneMap& m = ab.map.map();
      std::vector<VertexId> q_to_m(qm.num_vertices(), kUnreachable);
      for (VertexId u = 0; u < m.num_vertices(); ++u) q_to_m[ab.vertex_correspondence[u]] = u;
      const ContourLabelProcess process = contour_label_process(sample.tree);
      const auto& to_q = sample.quad.image.vertex_correspondence;
      Row& row = rows[rep];
      row.delta = max_face_degree(m);
      auto fail = [&](const std::string& what) {
        InstanceBundle bundle = make_bundle(sample.tree, sample.eps);
        bundle.failed_check = what;
        bundle.detail = "rep " + std::to_string(rep);
        throw ExperimentAssertion(what + " violated", std::move(bundle));
      };
      for (std::size_t s = 0; s < p.sources_per_rep; ++s) {
        const std::size_t i = rng.uniform_below(2 * n);
        const VertexId vi = to_q[process.vertex[i]];
        const auto dq = bfs_distances(qm, vi);
        const auto dm_tilde = bfs_distances(m, q_to_m[sample.quad.tilde_vertex(i)]);
        const auto d_circ = d_circ_row(process.label, i);
        std::vector<std::uint32_t> dm_v;
        if (q_to_m[vi] != kUnreachable) dm_v = bfs_distances(m, q_to_m[vi]);
        for (std::size_t j = 0; j <= 2 * n; ++j) {
          const VertexId vj = to_q[process.vertex[j]];
          const std::uint32_t tilde_dist = dm_tilde[q_to_m[sample.quad.tilde_vertex(j)]];
          if (tilde_dist > d_circ[j] + row.delta) fail("contour_distance_bound");
          const double defect =
              scale * std::abs(static_cast<double>(dq[vj]) - static_cast<double>(tilde_dist));
          row.defect_sum += defect;
          row.defect_max = std::max(row.defect_max, defect);
          ++row.pairs;
          if (!dm_v.empty() && q_to_m[vj] != kUnreachable) {
            if (dm_v[q_to_m[vj]] > d_circ[j] + row.delta) fail("branch_chain_bound");
            ++row.branch_pairs;
          }
        }
      }
    });
    std::vector<double> defects;
    double max_defect = 0.0;
    std::uint64_t pairs = 0, bpairs = 0;
    for (std::size_t rep = 0; rep < p.reps; ++rep) {
      const Row& r = rows[rep];
      const double mean = r.pairs ? r.defect_sum / static_cast<double>(r.pairs) : 0.0;
      defects.push_back(mean);
      max_defect = std::max(max_defect, r.defect_max);
      pairs += r.pairs;
      bpairs += r.branch_pairs;
      b.result.csv += std::to_string(n) + "," + std::to_string(rep) + "," +
                      std::to_string(r.pairs) + "," + num(mean) + "," + num(r.defect_max) +
                      ",0,0," + std::to_string(r.delta) + "\n";
    }
    contour_pairs += pairs;
    branch_pairs += bpairs;
    const SampleSummary s = summarize(defects);
    mean_defects.push_back(s.mean);
    b.result.summary["per_n"].push_back({{"n", n},
                                         {"label_scale", scale},
                                         {"mean_defect", summary_json(s)},
                                         {"max_defect", max_defect},
                                         {"contour_pairs", pairs},
                                         {"branch_pairs", bpairs}});
  }
  b.result.summary["contour_pairs_total"] = contour_pairs;
  b.result.summary["branch_pairs_total"] = branch_pairs;
  b.verdict("mean_defect_decreasing", strictly_decreasing(mean_defects),
            {{"means", mean_defects}});
  // Any violation aborts with an assertion, so reaching here means none.
  b.verdict("bounds_hold", true,
            {{"contour_pairs", contour_pairs}, {"branch_pairs", branch_pairs}});
  return b.finish();
}

ExperimentResult delta(const ExperimentParams& p) {
  Builder b(p, "n,rep,pointed_face_degree_max,face_degree_max,vertex_degree_max");
  std::vector<double> tail;
  bool dual_ok = true;
  for (std::size_t n : p.n_grid) {
    struct Row {
      std::uint32_t pointed, face, vertex;
    };
    std::vector<Row> rows(p.reps);
    parallel_for(p.reps, p.threads, [&](std::size_t rep) {
      Rng rng = rep_rng(p, n, rep);
      PointedSample sample = sample_pointed_quad(n, rng);
      const PlaneMap& qm = sample.quad.quad.map();
      if (max_face_degree(qm) != 4) {
        InstanceBundle bundle = make_bundle(sample.tree, sample.eps);
        bundle.failed_check = "quadrangulation_face_degree";
        throw ExperimentAssertion("quadrangulation with a face of degree != 4",
                                  std::move(bundle));
      }
      const AbImage ab = ab_forward(sample.quad.quad);
      const PlaneMap m = trivial_quad_to_map(qm);
      rows[rep] = {static_cast<std::uint32_t>(max_face_degree(ab.map.map())),
                   static_cast<std::uint32_t>(max_face_degree(m)),
                   static_cast<std::uint32_t>(max_vertex_degree(m))};
    });
    const double log_n = std::log(static_cast<double>(n));
    std::size_t above_pointed = 0, above_face = 0, above_vertex = 0;
    std::vector<double> pointed, face_even, vertex_odd;
    for (std::size_t rep = 0; rep < p.reps; ++rep) {
      const Row& r = rows[rep];
      above_pointed += r.pointed > log_n;
      above_face += r.face > log_n;
      above_vertex += r.vertex > log_n;
      pointed.push_back(r.pointed);
      if (rep % 2 == 0) face_even.push_back(r.face);
      else vertex_odd.push_back(r.vertex);
      b.result.csv += std::to_string(n) + "," + std::to_string(rep) + "," +
                      std::to_string(r.pointed) + "," + std::to_string(r.face) + "," +
                      std::to_string(r.vertex) + "\n";
    }
    const double reps = static_cast<double>(p.reps);
    tail.push_back(above_pointed / reps);
    // Face and vertex maxima from disjoint replications, so the samples are
    // independent.
    const KsResult ks = ks_two_sample(face_even, vertex_odd, p.alpha);
    dual_ok = dual_ok && !ks.rejects();
    const SampleSummary s = summarize(pointed);
    b.result.summary["per_n"].push_back(
        {{"n", n},
         {"log_n", log_n},
         {"p_pointed_face_max_above_log_n", above_pointed / reps},
         {"p_face_max_above_log_n", above_face / reps},
         {"p_vertex_max_above_log_n", above_vertex / reps},
         {"pointed_face_max", summary_json(s)},
         {"mean_ratio_to_log_n", s.mean / log_n},
         {"dual_ks", ks_json(ks)}});
  }
  b.verdict("tail_frequency_decreasing", strictly_decreasing(tail), {{"frequencies", tail}});
  b.verdict("dual_distribution_match", dual_ok);
  return b.finish();
}

ExperimentResult reroot(const ExperimentParams& p) {
  Builder b(p, "n,rep,d_v1_v2,d_vstar_v1,d_contour_vstar");
  for (std::size_t n : p.n_grid) {
    struct Row {
      std::uint32_t v1v2, star_v1, contour;
    };
    std::vector<Row> rows(p.reps);
    parallel_for(p.reps, p.threads, [&](std::size_t rep) {
      Rng rng = rep_rng(p, n, rep);
      PointedSample sample = sample_pointed_quad(n, rng);
      const AbImage ab = ab_forward(sample.quad.quad);
      const PointedPlaneMap& m = ab.map;
      const std::size_t nv = m.map().num_vertices();
      const auto v1 = static_cast<VertexId>(rng.uniform_below(nv));
      const auto v2 = static_cast<VertexId>(rng.uniform_below(nv));
      const std::size_t k = rng.uniform_below(2 * n);
      const VertexId tilde = sample.quad.tilde_vertex(k);
      std::uint32_t contour = kUnreachable;
      for (VertexId u = 0; u < nv; ++u) {
        if (ab.vertex_correspondence[u] == tilde) contour = m.l_plus(u);
      }
      rows[rep] = {bfs_distances(m.map(), v1)[v2], m.l_plus(v1), contour};
    });
    std::vector<double> even_v1v2, odd_star, odd_contour;
    for (std::size_t rep = 0; rep < p.reps; ++rep) {
      const Row& r = rows[rep];
      if (rep % 2 == 0) {
        even_v1v2.push_back(r.v1v2);
      } else {
        odd_star.push_back(r.star_v1);
        odd_contour.push_back(r.contour);
      }
      b.result.csv += std::to_string(n) + "," + std::to_string(rep) + "," +
                      std::to_string(r.v1v2) + "," + std::to_string(r.star_v1) + "," +
                      std::to_string(r.contour) + "\n";
    }
    // The two arms of each test come from disjoint replications.
    const KsResult identity = ks_two_sample(even_v1v2, odd_star, p.alpha);
    const KsResult control = ks_two_sample(even_v1v2, odd_contour, p.alpha);
    b.result.summary["per_n"].push_back({{"n", n},
                                         {"ks_identity", ks_json(identity)},
                                         {"ks_negative_control", ks_json(control)}});
    b.verdict("identity_not_rejected_n" + std::to_string(n), !identity.rejects());
    b.verdict("negative_control_rejected_n" + std::to_string(n), control.rejects());
  }
  return b.finish();
}

ExperimentResult nj(const ExperimentParams& p) {
  Builder b(p, "n,rep,sup_deviation,final_ratio");
  std::vector<double> means;
  for (std::size_t n : p.n_grid) {
    struct Row {
      double sup, ratio;
    };
    std::vector<Row> rows(p.reps);
    parallel_for(p.reps, p.threads, [&](std::size_t rep) {
      Rng rng = rep_rng(p, n, rep);
      const auto N = nj_process(sample_uniform_tree(n, rng));
      const double scale = 2.0 / static_cast<double>(n);
      const double steps = 2.0 * static_cast<double>(n);
      double sup = 0.0;
      // 2 N(floor(2nt)) / n is constant on [j / 2n, (j + 1) / 2n).
      for (std::size_t j = 0; j < N.size(); ++j) {
        const double value = scale * N[j];
        const double t0 = static_cast<double>(j) / steps;
        const double t1 = std::min(1.0, static_cast<double>(j + 1) / steps);
        sup = std::max({sup, std::abs(value - t0), std::abs(value - t1)});
      }
      rows[rep] = {sup, scale * N.back()};
    });
    std::vector<double> sups, ratios;
    for (std::size_t rep = 0; rep < p.reps; ++rep) {
      sups.push_back(rows[rep].sup);
      ratios.push_back(rows[rep].ratio);
      b.result.csv += std::to_string(n) + "," + std::to_string(rep) + "," + num(rows[rep].sup) +
                      "," + num(rows[rep].ratio) + "\n";
    }
    const SampleSummary s = summarize(sups);
    means.push_back(s.mean);
    b.result.summary["per_n"].push_back({{"n", n},
                                         {"sup_deviation", summary_json(s)},
                                         {"final_ratio", summary_json(summarize(ratios))}});
  }
  b.verdict("sup_deviation_decreasing", strictly_decreasing(means), {{"means", means}});
  return b.finish();
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"moments",  "tv",    "two_point", "isometry",
                                               "delta",    "reroot", "nj"};
  return ids;
}

ExperimentResult run_experiment(const ExperimentParams& params) {
  if (params.n_grid.empty() || params.reps == 0) {
    throw MapLabError(ErrorCode::kIndexOutOfRange, "experiment needs n >= 1 and reps >= 1");
  }
  for (std::size_t n : params.n_grid) {
    if (n == 0) throw MapLabError(ErrorCode::kIndexOutOfRange, "experiment needs n >= 1");
  }
  const std::string& id = params.id;
  if (id == "moments") return moments(params);
  if (id == "tv") return tv(params);
  if (id == "two_point") return two_point(params);
  if (id == "isometry") return isometry(params);
  if (id == "delta") return delta(params);
  if (id == "reroot") return reroot(params);
  if (id == "nj") return nj(params);
  throw MapLabError(ErrorCode::kParseError, "unknown experiment '" + id + "'");
}

// ---------------------------------------------------------------------------
// Sampled identity checks.

bool SampledReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const SampledCheck& c) { return c.failures == 0; });
}

namespace {

enum SampledId : std::size_t {
  kSCvsRoundtrip,
  kSQuadrangulation,
  kSAbStructure,
  kSDistanceIdentity,
  kSTreeMaxima,
  kSLeftmost,
  kSSpecial,
  kSCount
};

constexpr std::array<const char*, kSCount> kSampledNames = {
    "cvs_roundtrip",    "quadrangulation",   "ab_structure",
    "distance_identity", "tree_maxima_match", "leftmost_geodesic_is_successor_chain",
    "special_chains"};

}  // namespace

SampledReport check_samples(std::size_t n, std::size_t samples, std::uint64_t seed,
                            unsigned threads) {
  if (n == 0 || samples == 0) {
    throw MapLabError(ErrorCode::kIndexOutOfRange, "sampled checks need n >= 1 and samples >= 1");
  }
  struct Counts {
    std::array<std::uint64_t, kSCount> checked{}, failed{};
    void add(SampledId id, bool ok) {
      ++checked[id];
      failed[id] += ok ? 0 : 1;
    }
  };
  std::vector<Counts> counts(samples);
  parallel_for(samples, threads, [&](std::size_t rep) {
    Counts& c = counts[rep];
    Rng rng(derive_seed(seed, n, rep));
    PointedSample sample = sample_pointed_quad(n, rng);
    const PointedPlaneMap& q = sample.quad.quad;
    const PlaneMap& qm = q.map();
    c.add(kSQuadrangulation, qm.num_faces() == n && max_face_degree(qm) == 4 &&
                                 qm.num_vertices() == n + 2);
    try {
      const CvsImage back = cvs_forward(q);
      c.add(kSCvsRoundtrip, back.tree == sample.tree && back.eps == sample.eps);
    } catch (const MapLabError&) {
      c.add(kSCvsRoundtrip, false);
    }
    const AbImage ab = ab_forward(q);
    const PlaneMap& m = ab.map.map();
    const auto vmax = local_maxima(q);
    const auto max_count = static_cast<std::size_t>(std::count(vmax.begin(), vmax.end(), true));
    c.add(kSAbStructure, m.num_edges() == n && m.num_faces() == max_count &&
                             m.num_vertices() + max_count == qm.num_vertices());
    const auto to_star = bfs_distances(m, ab.map.v_star());
    for (VertexId u = 0; u < m.num_vertices(); ++u) {
      c.add(kSDistanceIdentity, to_star[u] == q.l_plus(ab.vertex_correspondence[u]));
    }
    std::vector<bool> mapped(qm.num_vertices(), false);
    for (VertexId v : broad_local_maxima(sample.tree)) {
      mapped[sample.quad.image.vertex_correspondence[v]] = true;
    }
    c.add(kSTreeMaxima, mapped == vmax);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      const GeodesicChain chain = leftmost_geodesic(q, sample.quad.arc(i));
      bool same = true;
      std::size_t k = 0;
      for (std::size_t corner = i; corner != kInfinity; corner = sample.quad.successor[corner]) {
        same = same && k < chain.size() && chain[k] == sample.quad.arc(corner);
        ++k;
      }
      c.add(kSLeftmost, same && k == chain.size());
      for (std::size_t t = 1; t < chain.size(); ++t) c.add(kSSpecial, is_special(q, ab, chain[t]).has_value());
    }
  });
  SampledReport report;
  report.n = n;
  report.samples = samples;
  report.seed = seed;
  for (std::size_t id = 0; id < kSCount; ++id) {
    SampledCheck check{kSampledNames[id], 0, 0};
    for (const auto& c : counts) {
      check.checked += c.checked[id];
      check.failures += c.failed[id];
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

std::string sampled_report_to_json(const SampledReport& report) {
  ordered_json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "sampled_checks";
  doc["n"] = report.n;
  doc["samples"] = report.samples;
  doc["seed"] = report.seed;
  doc["git_describe"] = MAPLAB_GIT_DESCRIBE;
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"checked", c.checked},
                      {"failures", c.failures},
                      {"passed", c.failures == 0}});
  }
  doc["checks"] = std::move(checks);
  doc["passed"] = report.passed();
  return doc.dump(2) + "\n";
}

}  // namespace maplab
