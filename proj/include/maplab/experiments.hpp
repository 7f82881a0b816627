#pragma once

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "maplab/bundle.hpp"
#include "maplab/error.hpp"
#include "maplab/random.hpp"

namespace maplab {

/// (9 / (8n))^(1/4), applied to labels and distances.
double label_scale(std::size_t n);
/// 1 / sqrt(2n), applied to the contour process.
double contour_scale(std::size_t n);

// Samplers built from the certified bijections only.

struct PointedSample {
  WellLabeledTree tree;
  Epsilon eps;
  CvsQuadrangulation quad;
};

/// Uniform (Q_n, v*): uniform tree and uniform eps, then cvs_inverse.
PointedSample sample_pointed_quad(std::size_t n, Rng& rng);
/// Uniform rooted map M_n: forget v*, then the trivial bijection.
PlaneMap sample_map(std::size_t n, Rng& rng);

/// Runs `body(rep)` for rep in [0, reps) on `threads` workers. Results must
/// be written to per-rep slots so that the outcome does not depend on the
/// schedule.
void parallel_for(std::size_t reps, unsigned threads, const std::function<void(std::size_t)>& body);

/// Thread count from an explicit value, else MAPLAB_THREADS, else 1.
unsigned resolve_threads(std::optional<unsigned> requested);

struct ExperimentParams {
  std::string id;
  std::vector<std::size_t> n_grid;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// isometry: contour sources per replication; every index j is paired with
  /// each source.
  std::size_t sources_per_rep = 2;
  /// Significance level of the two-sample tests.
  double alpha = 1e-3;
};

struct Verdict {
  std::string name;
  bool passed = false;
};

struct ExperimentResult {
  std::string id;
  std::string csv;
  nlohmann::ordered_json summary;
  std::vector<Verdict> verdicts;

  bool passed() const;
};

/// Raised when a hard (non-statistical) bound fails on a sample.
class ExperimentAssertion : public MapLabError {
 public:
  ExperimentAssertion(const std::string& what, InstanceBundle bundle)
      : MapLabError(ErrorCode::kAssertionFailure, what), bundle_(std::move(bundle)) {}
  const InstanceBundle& bundle() const { return bundle_; }

 private:
  InstanceBundle bundle_;
};

/// Identifiers accepted by run_experiment.
const std::vector<std::string>& experiment_ids();

/// CSV bytes and summary are a pure function of the parameters other than
/// `threads`.
ExperimentResult run_experiment(const ExperimentParams& params);

/// Sampled versions of the exhaustive identity checks (CVS roundtrip,
/// distance identity, local maxima, special chains) on `reps` uniform
/// samples of size n.
struct SampledCheck {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
};

struct SampledReport {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<SampledCheck> checks;

  bool passed() const;
};

SampledReport check_samples(std::size_t n, std::size_t samples, std::uint64_t seed,
                            unsigned threads);
std::string sampled_report_to_json(const SampledReport& report);

}  // namespace maplab
