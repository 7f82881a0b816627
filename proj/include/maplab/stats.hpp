#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace maplab {

/// Two-sample Kolmogorov-Smirnov test with the asymptotic distribution.
struct KsResult {
  double statistic = 0.0;       // sup |F1 - F2|
  double p_value = 1.0;         // asymptotic
  double critical_value = 0.0;  // rejection threshold at the requested level
  std::size_t n1 = 0;
  std::size_t n2 = 0;

  bool rejects() const { return statistic > critical_value; }
};

/// Survival function of the Kolmogorov distribution, P(K > x).
double kolmogorov_survival(double x);

/// Ties are handled exactly: both empirical CDFs jump at each distinct value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha);

struct SampleSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
  double min = 0.0;
  double max = 0.0;
};

SampleSummary summarize(std::span<const double> values);

}  // namespace maplab
