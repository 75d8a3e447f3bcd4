#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wigdet/tridiag.hpp"

namespace wigdet {

// Martingale increment driving log F_j, evaluated at the previous step's
// angle: the (-1)^(j-1) factors of the polar convention cancel in every
// quadratic ratio, leaving plain cos/sin weights.
inline double h_value(double theta_prev, double a_2j, double a_2jm1,
                      double c_2jm1, double c_2jm2) {
  const double c = std::cos(theta_prev);
  const double s = std::sin(theta_prev);
  return -c_2jm1 * c * c - c_2jm2 * s * s + (a_2jm1 - a_2j) * c * s;
}

// Exact conditional second moment of h_value at a fixed angle:
// var_c (cos^4 + sin^4) + var(a-a') cos^2 sin^2, which collapses to 2/beta.
inline double h_conditional_second_moment(double theta, int beta) {
  const double var = 2.0 / beta;  // each of a_i, c_i
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  return var * (c2 * c2 + s2 * s2) + 2.0 * var * c2 * s2;
}

// |logF[n/2] - logF[m] - sum of increments|, an exact identity of the record.
double telescoping_residual(const DeterminantTrace& trace);

struct MartingaleReport {
  int n = 0;
  int m = 0;
  std::size_t replicates = 0;
  double epsilon = 0.1;

  std::vector<double> j_mean;        // mean of h_j over replicates, j = m+1..n/2
  std::vector<double> j_mean_stderr;
  std::vector<double> j_second;      // mean of h_j^2 over replicates

  double pooled_mean = 0.0;
  double pooled_mean_stderr = 0.0;
  double pooled_second = 0.0;
  double pooled_second_stderr = 0.0;

  double s_n2 = 0.0;             // sum_j mean(T_j^2) for T_j = h_j / sqrt(j)
  double lindeberg_ratio = 0.0;  // sum_j mean(T_j^2 1{|T_j| >= eps s_n}) / s_n^2
};

MartingaleReport martingale_report(std::span<const DeterminantTrace> traces,
                                   double epsilon = 0.1);

struct WeylEstimate {
  int k = 0;
  std::complex<double> mean;
  double stderr_ = 0.0;  // sqrt(se_re^2 + se_im^2)
  std::size_t count = 0;
};

WeylEstimate weyl_sum(std::span<const double> thetas, int k);

}  // namespace wigdet
