#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wigdet/errors.hpp"
#include "wigdet/rng.hpp"

namespace wigdet {

// Mean-zero scalar law (Gaussian or finitely supported) with exact moments
// up to order four kept alongside the sampler.
class AtomDistribution {
 public:
  enum class Kind { gaussian_real, discrete_real };

  AtomDistribution() = default;  // degenerate zero-variance Gaussian

  static AtomDistribution gaussian(double variance);
  static AtomDistribution discrete(std::vector<double> points,
                                   std::vector<double> probs);
  static AtomDistribution zero();              // degenerate law at 0
  static AtomDistribution two_point(double s);  // +-s with probability 1/2
  // symmetric {-s, 0, s} law solved from the target second and fourth moment
  static AtomDistribution symmetric_three_point(double m2, double m4);

  Kind kind() const { return kind_; }
  bool is_zero() const;
  double variance() const { return moments_[1]; }
  // exact m_k, k in 1..4
  double moment(int order) const;

  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& probs() const { return probs_; }

  double sample(rng::Stream& stream) const;

 private:
  void compute_discrete_moments();

  Kind kind_ = Kind::gaussian_real;
  double gauss_variance_ = 0.0;
  std::vector<double> points_, probs_, cum_;
  std::array<double, 4> moments_{};  // m1..m4
};

// Complex atom with independent real and imaginary parts; a degenerate
// imaginary part encodes a real entry law.
struct ComplexAtom {
  AtomDistribution re;
  AtomDistribution im;

  double total_variance() const { return re.variance() + im.variance(); }
  bool is_real() const { return im.is_zero(); }
  std::complex<double> sample(rng::Stream& stream) const;
};

enum class EnsembleFamily { wigner_hermitian, iid_square };

struct EnsembleSpec {
  EnsembleFamily family = EnsembleFamily::wigner_hermitian;
  ComplexAtom offdiag;
  AtomDistribution diag;
  double sigma2 = 1.0;  // diagonal variance
  std::string label;
};

// Catalog names are stable strings shared by the CLI and reports.
const std::vector<std::string>& ensemble_catalog();
EnsembleSpec make_ensemble(const std::string& kind);

// Samples a matrix for `spec`.  Entry (i, j) draws from its own substream,
// indexed row-major over the upper triangle (or the full square for the iid
// family), so the result is independent of evaluation order.
Eigen::MatrixXcd sample_matrix(const EnsembleSpec& spec, int n,
                               std::uint64_t seed);

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-14);

// Exact mixed moments E[(Re z)^a (Im z)^b] for a + b <= order.
struct MomentTable {
  int order = 0;
  double value[5][5] = {};
  double operator()(int a, int b) const { return value[a][b]; }
};
MomentTable atom_moments(const ComplexAtom& atom, int order);

struct MatchReport {
  int order = 0;
  double max_abs_discrepancy = 0.0;
  bool matched = false;  // max discrepancy <= 1e-12
};
MatchReport verify_matching(const ComplexAtom& a, const ComplexAtom& b,
                            int order);

}  // namespace wigdet
