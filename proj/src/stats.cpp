#include "wigdet/stats.hpp"

#include <algorithm>
#include <cmath>

namespace wigdet {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double kolmogorov_p(double lambda) {
  if (lambda <= 0.05) return 1.0;  // series too slow below; p is 1 to 1e-15
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {
void require_finite(const std::vector<double>& xs) {
  for (double x : xs)
    if (!std::isfinite(x)) throw NumericalError("non-finite sample rejected");
}
}  // namespace

KSResult ks_one_sample(std::vector<double> samples, const std::string& cdf_id) {
  if (cdf_id != "std-normal") throw CatalogError("unknown reference cdf: " + cdf_id);
  if (samples.size() < 5) throw UsageError("ks test needs at least 5 samples");
  require_finite(samples);
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = std_normal_cdf(samples[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  KSResult result;
  result.d = d;
  result.n = samples.size();
  result.p_approx = kolmogorov_p(std::sqrt(n) * d);
  return result;
}

KSResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
  if (x.size() < 5 || y.size() < 5) throw UsageError("ks test needs at least 5 samples");
  require_finite(x);
  require_finite(y);
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::abs(i / nx - j / ny));
  }
  KSResult result;
  result.d = d;
  result.n = x.size();
  result.m = y.size();
  const double eff = nx * ny / (nx + ny);
  result.p_approx = kolmogorov_p(std::sqrt(eff) * d);
  return result;
}

SummaryStats summary(const std::vector<double>& samples) {
  if (samples.size() < 2) throw UsageError("summary needs at least 2 samples");
  require_finite(samples);
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : samples) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  SummaryStats s;
  s.n = samples.size();
  s.mean = mean;
  s.variance = m2 * n / (n - 1.0);
  s.mean_stderr = std::sqrt(s.variance / n);
  s.variance_stderr = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  if (m2 > 0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  s.skewness_stderr = std::sqrt(6.0 / n);
  s.kurtosis_stderr = std::sqrt(24.0 / n);
  return s;
}

std::vector<std::pair<double, double>> ecdf_table(
    std::vector<double> samples, const std::vector<double>& grid) {
  if (samples.empty()) throw UsageError("ecdf needs a nonempty sample");
  std::sort(samples.begin(), samples.end());
  std::vector<std::pair<double, double>> rows;
  rows.reserve(grid.size());
  const double n = static_cast<double>(samples.size());
  for (double g : grid) {
    const auto it = std::upper_bound(samples.begin(), samples.end(), g);
    rows.emplace_back(g, static_cast<double>(it - samples.begin()) / n);
  }
  return rows;
}

Histogram histogram(const std::vector<double>& samples, int bins) {
  if (samples.empty()) throw UsageError("histogram needs a nonempty sample");
  if (bins < 1) throw UsageError("histogram needs bins >= 1");
  require_finite(samples);
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *lo_it, hi = *hi_it;
  if (lo == hi) hi = lo + 1.0;
  Histogram h;
  h.edges.resize(bins + 1);
  h.counts.assign(bins, 0);
  const double width = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b) h.edges[b] = lo + b * width;
  for (double x : samples) {
    int b = static_cast<int>((x - lo) / width);
    b = std::clamp(b, 0, bins - 1);
    ++h.counts[b];
  }
  return h;
}

}  // namespace wigdet
