#include <doctest.h>

#include "maplab/bundle.hpp"
#include "maplab/verify.hpp"
#include "test_util.hpp"

using namespace maplab;
using maplab::testing::error_of;

TEST_CASE("closed-form counts") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(3) == 5);
  CHECK(count_trees(1) == 3);
  CHECK(count_trees(2) == 18);
  CHECK(count_rooted_maps(1) == 2);
  CHECK(count_rooted_maps(2) == 9);
  CHECK(count_rooted_maps(3) == 54);
  CHECK(count_pointed_maps(1) == 3);
  CHECK(count_pointed_maps(2) == 18);
  CHECK(count_pointed_maps(3) == 135);
  // Exact for large n: 3^40 Catalan(40) does not fit in 64 bits.
  CHECK(count_trees(40) == catalan(40) * boost::multiprecision::pow(BigInt(3), 40));
}

TEST_CASE("certify passes exhaustively for n <= 4") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const CertifyReport report = certify(n);
    CHECK(report.full);
    CHECK(report.passed());
    CHECK_FALSE(report.counterexample.has_value());
    const CountingLedger& l = report.ledger;
    CHECK(BigInt(l.trees_enumerated) == l.trees);
    CHECK(BigInt(l.distinct_pointed_quads) == l.quads_pointed);
    CHECK(BigInt(l.distinct_ab_images) == l.quads_pointed);
    CHECK(BigInt(l.distinct_pointed_maps) == l.maps_pointed);
    CHECK(BigInt(l.distinct_maps) == l.maps);
    for (const char* name : {"cvs_roundtrip", "distance_identity", "special_chains",
                             "d_circ_formula", "tree_maxima_match", "ab_injective"}) {
      const CheckResult* c = report.find(name);
      REQUIRE(c != nullptr);
      CHECK(c->checked > 0);
    }
  }
}

TEST_CASE("certify at n = 5 checks counts and roundtrips only") {
  const CertifyReport report = certify(5);
  CHECK_FALSE(report.full);
  CHECK(report.passed());
  CHECK(report.find("cvs_roundtrip") != nullptr);
  CHECK(report.find("d_circ_formula") == nullptr);
  CHECK(error_of([] { certify(6); }) == ErrorCode::kBoundExceeded);
}

TEST_CASE("certify report bytes do not depend on the thread count") {
  CertifyOptions one;
  CertifyOptions three;
  three.threads = 3;
  CHECK(report_to_json(certify(3, one)) == report_to_json(certify(3, three)));
}

TEST_CASE("every single face-rule mutation is caught with a replayable bundle") {
  for (int flip = 0; flip < 4; ++flip) {
    CAPTURE(flip);
    CertifyOptions options;
    bool* fields[] = {&options.rules.red_simple_clockwise, &options.rules.red_confluent_high,
                      &options.rules.green_simple_clockwise, &options.rules.green_confluent_low};
    *fields[flip] = false;
    bool caught = false;
    for (std::size_t n = 1; n <= 3 && !caught; ++n) {
      const CertifyReport report = certify(n, options);
      if (report.passed()) continue;
      caught = true;
      REQUIRE(report.counterexample.has_value());
      CHECK(report.counterexample->failed_check.has_value());
      const std::string text = write_bundle(*report.counterexample);
      CHECK(read_bundle(text).tree == report.counterexample->tree);
    }
    CHECK(caught);
  }
}

TEST_CASE("exact vertex law at n = 1") {
  const ExactVertexLaw law = exact_vertex_law(1);
  CHECK(law.mean_vertices == BigRational(3, 2));
  CHECK(law.mean_vertices_squared == BigRational(5, 2));
  CHECK(law.tv == BigRational(1, 3));
  CHECK(error_of([] { exact_vertex_law(6); }) == ErrorCode::kBoundExceeded);
}

TEST_CASE("exact vertex law: duality gives mean (n + 2) / 2") {
  for (std::size_t n = 1; n <= 4; ++n) CHECK(exact_vertex_law(n).mean_vertices == BigRational(n + 2, 2));
}

TEST_CASE("exact rerooting laws coincide for n <= 4") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const ExactRerootLaws laws = exact_reroot_laws(n);
    CHECK(laws.two_uniform == laws.from_point);
    BigRational total = 0;
    for (const auto& p : laws.from_point) total += p;
    CHECK(total == 1);
  }
}
