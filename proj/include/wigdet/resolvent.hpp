#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wigdet/ensembles.hpp"
#include "wigdet/errors.hpp"

namespace wigdet {

enum class NormPair { inf_one, inf_two, two_two, two_one };

// l^p -> l^q operator norms: (inf,1) is the entry sup, (inf,2) the max row
// l2 norm, (2,2) the spectral norm, (2,1) via duality with (inf,2).
double opnorm(const Eigen::MatrixXcd& a, NormPair pair);
NormPair norm_pair_from_name(const std::string& name);

// Rank-<=2 Hermitian perturbation directions used for entry swapping.
struct ElementaryMatrix {
  enum class Form { diagonal, symmetric, antisymmetric };

  Form form = Form::diagonal;
  int a = 0;
  int b = 0;  // unused for the diagonal form

  static ElementaryMatrix diagonal(int a);
  static ElementaryMatrix symmetric(int a, int b);
  static ElementaryMatrix antisymmetric(int a, int b);

  Eigen::MatrixXcd to_matrix(int n) const;
};

// (W - z)^{-1}; real z is admitted only away from the spectrum.
Eigen::MatrixXcd resolvent(const Eigen::MatrixXcd& w, std::complex<double> z);

// (1/n) tr (W - z)^{-1}, Im z > 0
std::complex<double> stieltjes(const Eigen::MatrixXcd& w, std::complex<double> z);

struct TaylorCoefficients {
  std::vector<std::complex<double>> c;  // c_1..c_k
  double cyclic_residual = 0.0;         // trace rearrangement check
};

// c_j = (-1)^j (1/n) tr((R0 V)^j R0), cross-checked against the cyclic form
// tr(V (R0 V)^(j-1) R0^2).
TaylorCoefficients taylor_coefficients(const Eigen::MatrixXcd& r0,
                                       const ElementaryMatrix& v, int k);

// Partial Neumann sum R0 + sum_{j<=k} (-t/sqrt(n))^j (R0 V)^j R0.
// Requires |t| ||R0||_(inf,1) < sqrt(n)/2.
Eigen::MatrixXcd neumann_sum(const Eigen::MatrixXcd& r0,
                             const ElementaryMatrix& v, double t, int k);

struct RemainderProbe {
  std::complex<double> direct;     // s_t from the perturbed resolvent
  std::complex<double> truncated;  // s_0 + sum_{j<=k} c_j t^j n^{-j/2}
  std::complex<double> remainder;  // direct - truncated
};

RemainderProbe expansion_remainder_probe(const Eigen::MatrixXcd& m0,
                                         const ElementaryMatrix& v,
                                         std::complex<double> z, double t,
                                         int k);

// Taylor data of the Stieltjes transform under a single-entry perturbation,
// with the norm certificate behind the coefficient envelope
// |c_j| <= K ||R0||^j min(||R0||, 1/(n eta)), K = 16 recorded.
struct ResolventExpansion {
  std::complex<double> z;
  double t = 0.0;
  ElementaryMatrix v;
  int k = 0;
  std::vector<std::complex<double>> coeffs;
  std::complex<double> remainder;
  double norm_inf1 = 0.0;        // ||R0||_(inf,1)
  double envelope_constant = 16.0;
  double envelope_ratio = 0.0;   // max_j |c_j| / (K ||R0||^j min(...))
};

ResolventExpansion resolvent_expansion(const Eigen::MatrixXcd& m0,
                                       const ElementaryMatrix& v,
                                       std::complex<double> z, double t, int k);

struct FtcResult {
  double residual = 0.0;
  double lhs = 0.0;        // log|det(W - z0)|
  double at_top = 0.0;     // log|det(W - E - iT)|
  double integral = 0.0;   // n Im int_{eta0}^{T} s(E + i eta) d eta
  std::size_t evaluations = 0;
};

// |log|det(W - z0)| - log|det(W - E - iT)| + n Im int s| via adaptive
// Simpson quadrature on geometrically split segments.
FtcResult ftc_logdet_identity(const Eigen::MatrixXcd& w,
                              std::complex<double> z0, double t_top,
                              double quad_tol);

struct SpectralDiagnostics {
  int n = 0;
  double min_gap = 0.0;  // min_i |lambda_i - E|
  std::vector<std::pair<std::pair<double, double>, int>> interval_counts;
  double deloc = 0.0;  // max_i ||u_i||_inf
};

SpectralDiagnostics spectral_diagnostics(
    const Eigen::MatrixXcd& w, double energy,
    const std::vector<std::pair<double, double>>& intervals);

// Bounded smooth test functions; each member keeps its first five
// derivatives below 1 in sup norm once width >= 1.
struct TestFunction {
  std::string id;  // bump | cosine | logistic
  double mu = 0.0;
  double width = 1.0;

  double operator()(double x) const;  // with G(-inf) = 0
  static TestFunction make(const std::string& id, double mu, double width);
  static const std::vector<std::string>& catalog();
};

struct SwapResult {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double diff = 0.0;
  double stderr_a = 0.0;
  double stderr_b = 0.0;
  double pooled_stderr = 0.0;
  std::size_t replicates = 0;
};

// E G(log|det(M - sqrt(n) z0)|) under two ensembles with a shared
// per-replicate seed schedule; singular draws contribute G(-inf) = 0.
SwapResult swap_experiment(const EnsembleSpec& ens_a, const EnsembleSpec& ens_b,
                           int n, std::complex<double> z0,
                           const TestFunction& g, std::size_t replicates,
                           std::uint64_t seed, unsigned workers = 1);

}  // namespace wigdet
