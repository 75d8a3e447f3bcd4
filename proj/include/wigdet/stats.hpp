#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wigdet/errors.hpp"

namespace wigdet {

double std_normal_cdf(double x);

// Asymptotic Kolmogorov law Q(lambda) = 2 sum_{k>=1} (-1)^(k-1) exp(-2k^2 l^2),
// truncated at 100 terms.
double kolmogorov_p(double lambda);

struct KSResult {
  double d = 0.0;        // sup distance in [0, 1]
  double p_approx = 1.0;
  std::size_t n = 0;
  std::size_t m = 0;  // 0 for one-sample
};

// One-sample test against a reference distribution ("std-normal").
KSResult ks_one_sample(std::vector<double> samples, const std::string& cdf_id);

KSResult ks_two_sample(std::vector<double> x, std::vector<double> y);

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0, mean_stderr = 0.0;
  double variance = 0.0, variance_stderr = 0.0;  // unbiased
  double skewness = 0.0, skewness_stderr = 0.0;
  double excess_kurtosis = 0.0, kurtosis_stderr = 0.0;
};

SummaryStats summary(const std::vector<double>& samples);

// (grid point, empirical CDF value) rows, grid order preserved
std::vector<std::pair<double, double>> ecdf_table(std::vector<double> samples,
                                                  const std::vector<double>& grid);

struct Histogram {
  std::vector<double> edges;        // bins + 1 entries
  std::vector<std::size_t> counts;  // bins entries, summing to N
};

Histogram histogram(const std::vector<double>& samples, int bins);

}  // namespace wigdet
