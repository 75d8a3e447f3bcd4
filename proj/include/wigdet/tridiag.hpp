#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wigdet/errors.hpp"
#include "wigdet/rng.hpp"

namespace wigdet {

// Trotter-form tridiagonal model.  a[i-1] is the i-th diagonal entry and
// b[i-1] couples rows i and i+1, so b[i-1]^2 has mean i (beta = 2) or the
// chi-square law with i degrees of freedom (beta = 1).
struct TridiagonalModel {
  int n = 0;
  int beta = 0;  // 1 = GOE-like, 2 = GUE-like, 0 = not an ensemble draw
  Eigen::VectorXd a;
  Eigen::VectorXd b;
};

// a_i ~ N(0, 2/beta), b_i^2 ~ Gamma(shape beta*i/2, scale 2/beta).
TridiagonalModel sample_tridiagonal(int n, int beta, std::uint64_t seed);

Eigen::MatrixXd tridiagonal_dense(const TridiagonalModel& t);

// Bottom-up Householder reduction of a Hermitian matrix to real symmetric
// tridiagonal form with nonnegative off-diagonal: each step fixes the
// trailing basis vectors and maps the remaining column onto b * e_{k-1}.
TridiagonalModel householder_tridiagonalize(const Eigen::MatrixXcd& h);

struct LogDetStep {
  double log_abs = 0.0;  // -inf when D_i = 0
  int sign = 0;
};

// D_i = a_i D_{i-1} - b_{i-1}^2 D_{i-2}, carried in log-sign form.
// Element i-1 of the result holds (log|D_i|, sign D_i).
std::vector<LogDetStep> det_recursion_exact(const TridiagonalModel& t);

// Paired determinant trace in polar/log form.  j indexes determinant pairs
// (E_{2j}, E_{2j-1}); logF and theta are recorded for j = m..n/2 and the
// martingale increments h for j = m+1..n/2.
struct DeterminantTrace {
  int n = 0;  // even
  int m = 1;
  std::vector<double> logF;
  std::vector<double> theta;  // in (-pi, pi], with the (-1)^j sign convention
  std::vector<double> h;
  double log_abs_En = 0.0;
  double log_abs_Dn = 0.0;
  int sign_n = 0;

  int half() const { return n / 2; }
  double log_f(int j) const { return logF.at(j - m); }
  double angle(int j) const { return theta.at(j - m); }
  double h_at(int j) const { return h.at(j - m - 1); }
};

// floor(log log log n) clamped to >= 1
int default_start_index(int n);

// Exact pair recursion carried on a unit direction vector plus an
// accumulated log norm; never overflows.  m = 0 selects the default start.
DeterminantTrace logdet_trace(const TridiagonalModel& t, int m = 0);

// c_i = (b_i^2 - i) / sqrt(i), i = 1..n-1
Eigen::VectorXd c_sequence(const TridiagonalModel& t);

}  // namespace wigdet
