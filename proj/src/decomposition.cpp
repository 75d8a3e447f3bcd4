#include "wigdet/decomposition.hpp"

#include <cmath>

namespace wigdet {

double telescoping_residual(const DeterminantTrace& trace) {
  double increments = 0.0;
  for (std::size_t i = 1; i < trace.logF.size(); ++i)
    increments += trace.logF[i] - trace.logF[i - 1];
  return std::abs(trace.logF.back() - trace.logF.front() - increments);
}

MartingaleReport martingale_report(std::span<const DeterminantTrace> traces,
                                   double epsilon) {
  if (traces.size() < 2)
    throw UsageError("martingale report needs at least 2 traces");
  const int n = traces.front().n;
  const int m = traces.front().m;
  const std::size_t steps = traces.front().h.size();
  for (const auto& t : traces)
    if (t.n != n || t.m != m || t.h.size() != steps)
      throw ShapeError("martingale report needs traces with common (n, m)");

  MartingaleReport report;
  report.n = n;
  report.m = m;
  report.replicates = traces.size();
  report.epsilon = epsilon;
  report.j_mean.resize(steps);
  report.j_mean_stderr.resize(steps);
  report.j_second.resize(steps);

  const double r = static_cast<double>(traces.size());
  double grand_sum = 0.0, grand_sq = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    double sum = 0.0, sq = 0.0;
    for (const auto& t : traces) {
      const double h = t.h[s];
      sum += h;
      sq += h * h;
    }
    const double mean = sum / r;
    const double var = std::max(0.0, (sq - r * mean * mean) / (r - 1.0));
    report.j_mean[s] = mean;
    report.j_mean_stderr[s] = std::sqrt(var / r);
    report.j_second[s] = sq / r;
    grand_sum += sum;
    grand_sq += sq;
  }
  const double count = r * static_cast<double>(steps);
  report.pooled_mean = grand_sum / count;
  const double pooled_var =
      std::max(0.0, (grand_sq - count * report.pooled_mean * report.pooled_mean) /
                        (count - 1.0));
  report.pooled_mean_stderr = std::sqrt(pooled_var / count);
  report.pooled_second = grand_sq / count;
  double fourth = 0.0;
  for (std::size_t s = 0; s < steps; ++s)
    for (const auto& t : traces) {
      const double h2 = t.h[s] * t.h[s];
      fourth += (h2 - report.pooled_second) * (h2 - report.pooled_second);
    }
  report.pooled_second_stderr = std::sqrt(fourth / (count - 1.0) / count);

  // Lindeberg proxy with T_j = h_j / sqrt(j)
  double s_n2 = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    const double j = static_cast<double>(m + 1 + static_cast<int>(s));
    s_n2 += report.j_second[s] / j;
  }
  report.s_n2 = s_n2;
  const double threshold = epsilon * std::sqrt(s_n2);
  double tail = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    const double j = static_cast<double>(m + 1 + static_cast<int>(s));
    double contrib = 0.0;
    for (const auto& t : traces) {
      const double tj = t.h[s] / std::sqrt(j);
      if (std::abs(tj) >= threshold) contrib += tj * tj;
    }
    tail += contrib / r;
  }
  report.lindeberg_ratio = s_n2 > 0 ? tail / s_n2 : 0.0;
  return report;
}

WeylEstimate weyl_sum(std::span<const double> thetas, int k) {
  if (k == 0) throw UsageError("weyl sum needs k != 0");
  if (thetas.size() < 2) throw UsageError("weyl sum needs at least 2 samples");
  WeylEstimate est;
  est.k = k;
  est.count = thetas.size();
  double sum_re = 0.0, sum_im = 0.0;
  for (double theta : thetas) {
    sum_re += std::cos(k * theta);
    sum_im += std::sin(k * theta);
  }
  const double n = static_cast<double>(thetas.size());
  const double mean_re = sum_re / n;
  const double mean_im = sum_im / n;
  est.mean = {mean_re, mean_im};
  double var_re = 0.0, var_im = 0.0;
  for (double theta : thetas) {
    const double dre = std::cos(k * theta) - mean_re;
    const double dim = std::sin(k * theta) - mean_im;
    var_re += dre * dre;
    var_im += dim * dim;
  }
  var_re /= (n - 1.0);
  var_im /= (n - 1.0);
  est.stderr_ = std::sqrt(var_re / n + var_im / n);
  return est;
}

}  // namespace wigdet
