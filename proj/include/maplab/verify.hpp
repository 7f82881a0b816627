#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maplab/bijections.hpp"
#include "maplab/bundle.hpp"

namespace maplab {

using BigInt = boost::multiprecision::cpp_int;

BigInt catalan(std::size_t n);
/// 3^n Catalan(n): well-labeled trees with n edges.
BigInt count_trees(std::size_t n);
/// (2 / (n + 2)) (3^n / (n + 1)) binom(2n, n): rooted maps with n edges, and
/// rooted quadrangulations with n faces.
BigInt count_rooted_maps(std::size_t n);
/// (3^n / (n + 1)) binom(2n, n): rooted pointed maps with n edges.
BigInt count_pointed_maps(std::size_t n);

/// Formula values next to the enumerated counts they are checked against.
struct CountingLedger {
  std::size_t n = 0;
  BigInt trees;
  BigInt quads_pointed;
  BigInt maps_pointed;
  BigInt maps;

  std::uint64_t trees_enumerated = 0;
  std::uint64_t cvs_images = 0;             // |T_n x {0,1}|
  std::uint64_t distinct_pointed_quads = 0;
  std::uint64_t distinct_rooted_quads = 0;
  std::uint64_t distinct_maps = 0;          // trivial images of the rooted quads
  std::uint64_t distinct_ab_images = 0;     // distinct (m, v*, eps)
  std::uint64_t distinct_pointed_maps = 0;  // distinct (m, v*) among AB images
};

struct CheckFailure {
  std::uint64_t instance = 0;  // 2 * tree_index + eps
  std::string detail;
};

struct CheckResult {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::optional<CheckFailure> first_failure;

  bool passed() const { return failures == 0; }
};

struct CertifyOptions {
  /// Largest n for the full set of ledgers and identity checks.
  std::size_t full_bound = 4;
  /// Largest n accepted at all; between full_bound and this only the counts
  /// and the roundtrips are checked.
  std::size_t roundtrip_bound = 5;
  unsigned threads = 1;
  FaceRules rules;
};

struct CertifyReport {
  std::size_t n = 0;
  bool full = false;
  CountingLedger ledger;
  std::vector<CheckResult> checks;
  /// Replay bundle for the smallest failing instance, if any.
  std::optional<InstanceBundle> counterexample;

  bool passed() const;
  const CheckResult* find(std::string_view name) const;
};

inline constexpr int kReportSchemaVersion = 1;

/// Enumerates T_n x {0,1} and runs every ledger and identity check on the
/// resulting pointed quadrangulations. Throws BoundExceeded for n too large.
CertifyReport certify(std::size_t n, const CertifyOptions& options = {});

using BigRational = boost::multiprecision::cpp_rational;

/// Exact law of #V(M_n) by enumeration: averaging over T_n x {0,1} weights
/// every rooted map equally, since each rooted quadrangulation has n + 2
/// pointings.
struct ExactVertexLaw {
  std::size_t n = 0;
  BigRational mean_vertices;
  BigRational mean_vertices_squared;
  /// E|2 #V / (n + 2) - 1|
  BigRational tv;
};

ExactVertexLaw exact_vertex_law(std::size_t n, std::size_t bound = 5);

/// Exact laws of d(V1, V2) and d(v*, V1) for uniform (M, v*) in M_n^pointed
/// and independent uniform vertices V1, V2; index k holds P(distance = k).
struct ExactRerootLaws {
  std::size_t n = 0;
  std::vector<BigRational> two_uniform;
  std::vector<BigRational> from_point;
};

ExactRerootLaws exact_reroot_laws(std::size_t n, std::size_t bound = 4);

/// Deterministic JSON rendering (no timings, no thread count).
std::string report_to_json(const CertifyReport& report);

}  // namespace maplab
