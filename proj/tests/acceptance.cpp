// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "maplab/cli.hpp"
#include "maplab/experiments.hpp"
#include "maplab/verify.hpp"

using namespace maplab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.passed) ++failures;
  std::cout << (o.passed ? "PASS " : "FAIL ") << name << " (" << o.detail << "; "
            << seconds_since(start) << " s)" << std::endl;
}

bool check_passed(const CertifyReport& r, const char* name) {
  const CheckResult* c = r.find(name);
  return c != nullptr && c->checked > 0 && c->passed();
}

bool sampled_passed(const SampledReport& r, const char* name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c.checked > 0 && c.failures == 0;
  }
  return false;
}

bool verdict(const ExperimentResult& r, const std::string& name) {
  for (const auto& v : r.verdicts) {
    if (v.name == name) return v.passed;
  }
  return false;
}

ExperimentParams params(const std::string& id, std::vector<std::size_t> grid, std::size_t reps,
                        std::uint64_t seed) {
  ExperimentParams p;
  p.id = id;
  p.n_grid = std::move(grid);
  p.reps = reps;
  p.seed = seed;
  p.threads = resolve_threads(std::nullopt);
  return p;
}

std::string cli_output(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  if (run(args, out, err) != kExitOk) throw std::runtime_error("command failed: " + err.str());
  return out.str();
}

}  // namespace

int main() {
  // Exhaustive reports for n <= 4 are shared by several criteria.
  std::vector<CertifyReport> full;
  double full_seconds = 0.0;
  {
    const auto start = Clock::now();
    for (std::size_t n = 1; n <= 4; ++n) full.push_back(certify(n));
    full_seconds = seconds_since(start);
  }
  auto all_full = [&](std::initializer_list<const char*> names) {
    for (const auto& r : full) {
      for (const char* name : names) {
        if (!check_passed(r, name)) return false;
      }
    }
    return true;
  };

  criterion("counting_ledgers_n_le_4", [&] {
    bool ok = full_seconds < 60.0;
    for (const auto& r : full) {
      const CountingLedger& l = r.ledger;
      ok = ok && BigInt(l.trees_enumerated) == count_trees(r.n) &&
           BigInt(l.distinct_pointed_quads) == 2 * l.trees &&
           BigInt(l.distinct_ab_images) == l.quads_pointed &&
           BigInt(l.distinct_maps) == count_rooted_maps(r.n);
    }
    ok = ok && all_full({"tree_count", "pointed_quad_count", "rooted_quad_count", "map_count",
                         "ab_injective", "ab_image"});
    return Outcome{ok, "enumeration took " + std::to_string(full_seconds) + " s"};
  });

  criterion("cvs_roundtrip_exhaustive_n_le_5_and_sampled_n_1000", [&] {
    const CertifyReport five = certify(5);
    const SampledReport sampled = check_samples(1000, 10000, 101, resolve_threads(std::nullopt));
    const bool ok = all_full({"cvs_roundtrip"}) && check_passed(five, "cvs_roundtrip") &&
                    sampled_passed(sampled, "cvs_roundtrip");
    return Outcome{ok, "n <= 5 exhaustive, 10000 samples at n = 1000"};
  });

  // Sampled identity checks at n = 10^4 serve two criteria.
  const SampledReport large = check_samples(10000, 1000, 202, resolve_threads(std::nullopt));

  criterion("distance_identity_l_plus", [&] {
    const bool ok = all_full({"distance_identity"}) && sampled_passed(large, "distance_identity");
    return Outcome{ok, "n <= 4 exhaustive, 1000 samples at n = 10000"};
  });

  criterion("geodesics_special_and_contour_distance_exact", [&] {
    const bool ok = all_full({"special_chains", "leftmost_geodesic_is_successor_chain",
                              "d_circ_formula"});
    return Outcome{ok, "all instances n <= 4, all index pairs"};
  });

  ExperimentResult iso;
  criterion("distance_bounds_zero_violations", [&] {
    iso = run_experiment(params("isometry", {1000, 10000, 100000}, 100, 303));
    const std::uint64_t pairs = iso.summary["contour_pairs_total"].get<std::uint64_t>();
    const std::uint64_t branch = iso.summary["branch_pairs_total"].get<std::uint64_t>();
    const bool ok = verdict(iso, "bounds_hold") && pairs >= 1000000 &&
                    all_full({"branch_chain_bound", "contour_distance_bound"});
    return Outcome{ok, std::to_string(pairs) + " contour pairs, " + std::to_string(branch) +
                           " branch pairs"};
  });

  criterion("tree_maxima_equal_quad_maxima", [&] {
    const bool ok = all_full({"tree_maxima_match"}) && sampled_passed(large, "tree_maxima_match");
    return Outcome{ok, "n <= 4 exhaustive, 1000 samples at n = 10000"};
  });

  criterion("vertex_count_moments", [&] {
    const ExperimentResult mean = run_experiment(params("moments", {1000}, 10000, 404));
    const ExperimentResult second = run_experiment(params("moments", {10000}, 2000, 405));
    const double z = mean.summary["per_n"][0]["z_score"].get<double>();
    const double ratio = second.summary["per_n"][0]["second_moment_ratio"].get<double>();
    const bool ok = verdict(mean, "mean_within_4se_n1000") &&
                    verdict(second, "second_moment_within_2pct_n10000");
    return Outcome{ok, "z = " + std::to_string(z) + ", E[(2V/n)^2] = " + std::to_string(ratio)};
  });

  criterion("vertex_count_concentration", [&] {
    const ExperimentResult r = run_experiment(params("tv", {100, 1000, 10000}, 2000, 505));
    const ExactVertexLaw one = exact_vertex_law(1);
    const bool ok = verdict(r, "strictly_decreasing") && one.tv == BigRational(1, 3);
    return Outcome{ok, "means " + r.summary["verdicts"][0].dump() + ", exact tv(1) = " +
                           one.tv.str()};
  });

  criterion("rerooting_invariance_ks", [&] {
    const ExperimentResult r = run_experiment(params("reroot", {1000}, 100000, 606));
    const auto& row = r.summary["per_n"][0];
    const bool ok = verdict(r, "identity_not_rejected_n1000") &&
                    verdict(r, "negative_control_rejected_n1000");
    return Outcome{ok, "identity D = " + std::to_string(row["ks_identity"]["statistic"].get<double>()) +
                           ", control D = " +
                           std::to_string(row["ks_negative_control"]["statistic"].get<double>()) +
                           ", critical " +
                           std::to_string(row["ks_identity"]["critical_value"].get<double>())};
  });

  criterion("isometry_defect_decreasing", [&] {
    if (iso.id.empty()) iso = run_experiment(params("isometry", {1000, 10000, 100000}, 100, 303));
    return Outcome{verdict(iso, "mean_defect_decreasing"),
                   "means " + iso.summary["verdicts"][0].dump()};
  });

  criterion("reproducible_across_thread_counts", [&] {
    bool ok = true;
    for (const std::string& id : experiment_ids()) {
      ExperimentParams one = params(id, {200, 400}, 24, 707);
      one.threads = 1;
      ExperimentParams four = one;
      four.threads = 4;
      const ExperimentResult a = run_experiment(one);
      const ExperimentResult b = run_experiment(four);
      ok = ok && a.csv == b.csv && a.summary.dump() == b.summary.dump();
    }
    ok = ok && sampled_report_to_json(check_samples(300, 50, 808, 1)) ==
                   sampled_report_to_json(check_samples(300, 50, 808, 4));
    CertifyOptions c1, c4;
    c4.threads = 4;
    ok = ok && report_to_json(certify(3, c1)) == report_to_json(certify(3, c4));
    for (const char* kind : {"tree", "quad", "map"}) {
      ok = ok && cli_output({"sample", kind, "--n", "500", "--seed", "9", "--threads", "1"}) ==
                     cli_output({"sample", kind, "--n", "500", "--seed", "9", "--threads", "4"});
    }
    ok = ok && cli_output({"experiment", "reroot", "--n", "300", "--reps", "40", "--seed", "9",
                           "--format", "json", "--threads", "1"}) ==
                   cli_output({"experiment", "reroot", "--n", "300", "--reps", "40", "--seed",
                               "9", "--format", "json", "--threads", "4"});
    return Outcome{ok, "all experiments, sampled and exhaustive certify, CLI sample"};
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " failing")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
