#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "wigdet/errors.hpp"

namespace wigdet {

enum class LogDetMethod { spectral, lu };

struct LogDetResult {
  double log_abs = 0.0;  // natural log of |det|; -inf when singular
  int sign = 0;          // -1/0/+1 for real-spectrum inputs; 0 iff singular
  LogDetMethod method = LogDetMethod::spectral;

  bool singular() const { return sign == 0; }
  double value() const { return sign * std::exp(log_abs); }
};

// eigenvalues below kSingularTol * max|lambda| count as zero
inline constexpr double kSingularTol = 1e-12;

// Hermitian input; sign from the count of negative eigenvalues.
LogDetResult logdet_hermitian(const Eigen::MatrixXcd& h);

// General real square matrix; sign from the pivot signs and permutation parity.
LogDetResult logdet_real_lu(const Eigen::MatrixXd& a);

// log|det| of a general complex matrix by partial-pivot LU.
double logdet_abs_lu(const Eigen::MatrixXcd& a);

// log|det(M - sqrt(n) z0 I)|.  Real z0 reduces to the Hermitian spectral
// path; complex z0 goes through complex LU.
double logdet_shifted(const Eigen::MatrixXcd& m, std::complex<double> z0);

// exact cumulative sum of log k, k <= n (compensated summation)
double log_factorial(long long n);

enum class Law { gue, goe, iid_real, iid_complex };

// Centering and scaling of the four limit laws.
struct LawSpec {
  Law law = Law::gue;

  double center(long long n) const;
  double scale(long long n) const;
  std::string name() const;
  static LawSpec from_name(const std::string& name);
};

double standardize_logdet(double log_abs_det, long long n, const LawSpec& law);

}  // namespace wigdet
