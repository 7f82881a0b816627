#include <doctest.h>

#include <sstream>

#include "maplab/experiments.hpp"
#include "test_util.hpp"

using namespace maplab;

namespace {

ExperimentParams params(const std::string& id, std::vector<std::size_t> grid, std::size_t reps) {
  ExperimentParams p;
  p.id = id;
  p.n_grid = std::move(grid);
  p.reps = reps;
  p.seed = 2024;
  return p;
}

std::string first_line(const std::string& csv) { return csv.substr(0, csv.find('\n')); }

std::size_t line_count(const std::string& csv) {
  return static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
}

}  // namespace

TEST_CASE("scales") {
  CHECK(label_scale(9) == doctest::Approx(std::pow(1.0 / 8, 0.25)));
  CHECK(contour_scale(8) == doctest::Approx(0.25));
}

TEST_CASE("parallel_for visits every index once") {
  for (unsigned threads : {1u, 2u, 5u}) {
    std::vector<int> hits(37, 0);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
}

TEST_CASE("parallel_for rethrows the failure of the smallest index") {
  try {
    parallel_for(20, 4, [](std::size_t i) {
      if (i % 7 == 3) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "3");
  }
}

TEST_CASE("samplers produce valid pointed quadrangulations") {
  Rng rng(1);
  for (std::size_t n : {1, 2, 10, 100}) {
    const PointedSample s = sample_pointed_quad(n, rng);
    CHECK(s.quad.quad.map().num_faces() == n);
    CHECK(max_face_degree(s.quad.quad.map()) == 4);
    CHECK(sample_map(n, rng).num_edges() == n);
  }
}

TEST_CASE("every experiment writes its header and one row per sample") {
  const std::vector<std::pair<std::string, std::string>> headers{
      {"moments", "n,rep,num_vertices"},
      {"tv", "n,rep,num_vertices,abs_dev"},
      {"isometry",
       "n,rep,pairs,mean_defect,max_defect,contour_bound_violations,branch_bound_violations,delta"},
      {"delta", "n,rep,pointed_face_degree_max,face_degree_max,vertex_degree_max"},
      {"reroot", "n,rep,d_v1_v2,d_vstar_v1,d_contour_vstar"},
      {"nj", "n,rep,sup_deviation,final_ratio"},
  };
  for (const auto& [id, header] : headers) {
    CAPTURE(id);
    const ExperimentResult r = run_experiment(params(id, {10, 20}, 6));
    CHECK(first_line(r.csv) == header);
    CHECK(line_count(r.csv) == 1 + 2 * 6);
    CHECK(r.summary["experiment"] == id);
    CHECK(r.summary["seed"] == 2024);
    CHECK_FALSE(r.verdicts.empty());
  }
  CHECK(experiment_ids().size() == headers.size() + 1);
}

TEST_CASE("two_point is exact at n = 1") {
  const ExperimentResult r = run_experiment(params("two_point", {1}, 20));
  CHECK(first_line(r.csv) == "n,rep,index,d_q_scaled,d_m_scaled,offset");
  CHECK(r.passed());
}

TEST_CASE("experiment output does not depend on the thread count") {
  for (const std::string& id : experiment_ids()) {
    CAPTURE(id);
    ExperimentParams one = params(id, {30, 60}, 16);
    ExperimentParams three = one;
    three.threads = 3;
    const ExperimentResult a = run_experiment(one);
    const ExperimentResult b = run_experiment(three);
    CHECK(a.csv == b.csv);
    CHECK(a.summary.dump() == b.summary.dump());
  }
}

TEST_CASE("different seeds give different samples") {
  ExperimentParams a = params("moments", {50}, 10);
  ExperimentParams b = a;
  b.seed = 2025;
  CHECK(run_experiment(a).csv != run_experiment(b).csv);
}

TEST_CASE("unknown experiment id") {
  CHECK(maplab::testing::error_of([] { run_experiment(params("nope", {10}, 1)); }) != std::nullopt);
}

TEST_CASE("sampled checks pass and are reproducible") {
  const SampledReport a = check_samples(50, 40, 9, 1);
  const SampledReport b = check_samples(50, 40, 9, 3);
  CHECK(a.passed());
  CHECK(sampled_report_to_json(a) == sampled_report_to_json(b));
  for (const auto& c : a.checks) CHECK(c.checked > 0);
}
