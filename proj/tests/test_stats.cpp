#include <doctest.h>

#include <cmath>

#include "maplab/random.hpp"
#include "maplab/stats.hpp"

using namespace maplab;

TEST_CASE("Kolmogorov survival function") {
  CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(kolmogorov_survival(1.9495) == doctest::Approx(0.001).epsilon(1e-2));
  CHECK(kolmogorov_survival(0.1) == 1.0);
  CHECK(kolmogorov_survival(5.0) < 1e-20);
}

TEST_CASE("KS statistic on small samples") {
  const KsResult same = ks_two_sample({1, 2, 3}, {1, 2, 3}, 0.05);
  CHECK(same.statistic == 0.0);
  CHECK_FALSE(same.rejects());

  const KsResult apart = ks_two_sample({1, 2, 3}, {4, 5, 6}, 0.05);
  CHECK(apart.statistic == 1.0);

  // F1 - F2 peaks at 1/2 just after 2.
  const KsResult half = ks_two_sample({1, 2, 3, 4}, {3, 4, 5, 6}, 0.05);
  CHECK(half.statistic == doctest::Approx(0.5));
  CHECK(half.n1 == 4);
  CHECK(half.n2 == 4);
}

TEST_CASE("KS ties jump together") {
  // Identical multisets with heavy ties: statistic must be exactly 0.
  const KsResult r = ks_two_sample({0, 0, 1, 1, 1, 2}, {2, 1, 1, 0, 1, 0}, 0.001);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == 1.0);
}

TEST_CASE("KS critical value and calibration") {
  const KsResult r = ks_two_sample(std::vector<double>(100, 0.0), std::vector<double>(100, 0.0),
                                   0.05);
  CHECK(r.critical_value == doctest::Approx(1.3581 * std::sqrt(2.0 / 100)).epsilon(1e-3));

  Rng rng(99);
  auto draw = [&](std::size_t k, double shift) {
    std::vector<double> v(k);
    for (auto& x : v) x = rng.uniform01() + shift;
    return v;
  };
  int rejections = 0;
  for (int t = 0; t < 200; ++t) rejections += ks_two_sample(draw(200, 0), draw(200, 0), 0.05).rejects();
  CHECK(rejections < 25);
  CHECK(ks_two_sample(draw(2000, 0), draw(2000, 0.1), 0.001).rejects());
}

TEST_CASE("sample summary") {
  const std::vector<double> v{1, 2, 3, 4};
  const SampleSummary s = summarize(v);
  CHECK(s.count == 4);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.variance == doctest::Approx(5.0 / 3));
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 12)));
  CHECK(s.min == 1);
  CHECK(s.max == 4);
}
