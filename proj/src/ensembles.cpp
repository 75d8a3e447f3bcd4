#include "wigdet/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wigdet {

namespace {
constexpr double kMomentTol = 1e-12;
}

AtomDistribution AtomDistribution::gaussian(double variance) {
  if (variance < 0) throw UsageError("gaussian atom needs variance >= 0");
  AtomDistribution a;
  a.kind_ = Kind::gaussian_real;
  a.gauss_variance_ = variance;
  a.moments_ = {0.0, variance, 0.0, 3.0 * variance * variance};
  return a;
}

AtomDistribution AtomDistribution::discrete(std::vector<double> points,
                                            std::vector<double> probs) {
  if (points.empty() || points.size() != probs.size())
    throw UsageError("discrete atom needs matching nonempty points/probs");
  double total = 0.0;
  for (double p : probs) {
    if (p < 0) throw UsageError("discrete atom probabilities must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > kMomentTol)
    throw UsageError("discrete atom probabilities must sum to 1");
  AtomDistribution a;
  a.kind_ = Kind::discrete_real;
  a.points_ = std::move(points);
  a.probs_ = std::move(probs);
  a.compute_discrete_moments();
  if (std::abs(a.moments_[0]) > kMomentTol)
    throw UsageError("atom distributions must be centered");
  a.cum_.resize(a.probs_.size());
  std::partial_sum(a.probs_.begin(), a.probs_.end(), a.cum_.begin());
  a.cum_.back() = 1.0;
  return a;
}

AtomDistribution AtomDistribution::zero() { return discrete({0.0}, {1.0}); }

AtomDistribution AtomDistribution::two_point(double s) {
  return discrete({-s, s}, {0.5, 0.5});
}

AtomDistribution AtomDistribution::symmetric_three_point(double m2, double m4) {
  if (m2 <= 0 || m4 < m2 * m2)
    throw UsageError("three-point atom needs m2 > 0 and m4 >= m2^2");
  // {-s, 0, s} with probs (p, 1-2p, p): m2 = 2ps^2, m4 = 2ps^4
  const double s = std::sqrt(m4 / m2);
  const double p = m2 * m2 / (2.0 * m4);
  return discrete({-s, 0.0, s}, {p, 1.0 - 2.0 * p, p});
}

void AtomDistribution::compute_discrete_moments() {
  for (int k = 1; k <= 4; ++k) {
    double m = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i)
      m += probs_[i] * std::pow(points_[i], k);
    moments_[k - 1] = m;
  }
}

bool AtomDistribution::is_zero() const {
  if (kind_ == Kind::gaussian_real) return gauss_variance_ == 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i] != 0.0 && probs_[i] > 0.0) return false;
  return true;
}

double AtomDistribution::moment(int order) const {
  if (order < 1 || order > 4) throw UsageError("atom moment order must be 1..4");
  return moments_[order - 1];
}

double AtomDistribution::sample(rng::Stream& stream) const {
  if (kind_ == Kind::gaussian_real)
    return gauss_variance_ == 0.0 ? 0.0
                                  : stream.normal(std::sqrt(gauss_variance_));
  const double u = stream.uniform01();
  for (std::size_t i = 0; i < cum_.size(); ++i)
    if (u <= cum_[i]) return points_[i];
  return points_.back();
}

std::complex<double> ComplexAtom::sample(rng::Stream& stream) const {
  const double x = re.sample(stream);
  const double y = im.is_zero() ? 0.0 : im.sample(stream);
  return {x, y};
}

const std::vector<std::string>& ensemble_catalog() {
  static const std::vector<std::string> names = {
      "gue",
      "goe",
      "bernoulli-complex",
      "bernoulli-symmetric",
      "iid-gaussian-real",
      "iid-gaussian-complex",
      "gue-matched-threepoint",
      "goe-matched-threepoint",
  };
  return names;
}

EnsembleSpec make_ensemble(const std::string& kind) {
  EnsembleSpec spec;
  spec.label = kind;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (kind == "gue") {
    spec.offdiag = {AtomDistribution::gaussian(0.5),
                    AtomDistribution::gaussian(0.5)};
    spec.diag = AtomDistribution::gaussian(1.0);
    spec.sigma2 = 1.0;
  } else if (kind == "goe") {
    spec.offdiag = {AtomDistribution::gaussian(1.0), AtomDistribution::zero()};
    spec.diag = AtomDistribution::gaussian(2.0);
    spec.sigma2 = 2.0;
  } else if (kind == "bernoulli-complex") {
    spec.offdiag = {AtomDistribution::two_point(inv_sqrt2),
                    AtomDistribution::two_point(inv_sqrt2)};
    spec.diag = AtomDistribution::two_point(1.0);
    spec.sigma2 = 1.0;
  } else if (kind == "bernoulli-symmetric") {
    spec.offdiag = {AtomDistribution::two_point(1.0), AtomDistribution::zero()};
    spec.diag = AtomDistribution::two_point(1.0);
    spec.sigma2 = 1.0;
  } else if (kind == "iid-gaussian-real") {
    spec.family = EnsembleFamily::iid_square;
    spec.offdiag = {AtomDistribution::gaussian(1.0), AtomDistribution::zero()};
    spec.diag = AtomDistribution::gaussian(1.0);
    spec.sigma2 = 1.0;
  } else if (kind == "iid-gaussian-complex") {
    spec.family = EnsembleFamily::iid_square;
    spec.offdiag = {AtomDistribution::gaussian(0.5),
                    AtomDistribution::gaussian(0.5)};
    // iid sampling draws every entry from offdiag; diag records the total
    // diagonal variance for the schema invariant
    spec.diag = AtomDistribution::gaussian(1.0);
    spec.sigma2 = 1.0;
  } else if (kind == "gue-matched-threepoint") {
    // match N(0, 1/2) through order four: m2 = 1/2, m4 = 3/4
    spec.offdiag = {AtomDistribution::symmetric_three_point(0.5, 0.75),
                    AtomDistribution::symmetric_three_point(0.5, 0.75)};
    spec.diag = AtomDistribution::two_point(1.0);
    spec.sigma2 = 1.0;
  } else if (kind == "goe-matched-threepoint") {
    // match N(0, 1) through order four: m2 = 1, m4 = 3
    spec.offdiag = {AtomDistribution::symmetric_three_point(1.0, 3.0),
                    AtomDistribution::zero()};
    spec.diag = AtomDistribution::two_point(std::sqrt(2.0));
    spec.sigma2 = 2.0;
  } else {
    throw CatalogError("unknown ensemble: " + kind);
  }
  return spec;
}

Eigen::MatrixXcd sample_matrix(const EnsembleSpec& spec, int n,
                               std::uint64_t seed) {
  if (n < 1) throw UsageError("matrix size must be >= 1");
  Eigen::MatrixXcd m(n, n);
  const auto nn = static_cast<std::uint64_t>(n);
  if (spec.family == EnsembleFamily::iid_square) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto stream = rng::Stream::substream(seed, nn * i + j);
        m(i, j) = spec.offdiag.sample(stream);
      }
    return m;
  }
  // Hermitian family: entry (i, j), i <= j, uses the row-major upper-triangle
  // stream index; the lower triangle mirrors by conjugation.
  for (int i = 0; i < n; ++i) {
    const std::uint64_t row_offset = nn * i - (static_cast<std::uint64_t>(i) *
                                               (i - 1)) / 2;
    for (int j = i; j < n; ++j) {
      auto stream = rng::Stream::substream(seed, row_offset + (j - i));
      if (i == j) {
        m(i, i) = spec.diag.sample(stream);
      } else {
        const std::complex<double> z = spec.offdiag.sample(stream);
        m(i, j) = z;
        m(j, i) = std::conj(z);
      }
    }
  }
  return m;
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (std::abs(m(i, i).imag()) > tol) return false;
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  }
  return true;
}

namespace {
double part_moment(const AtomDistribution& part, int k) {
  if (k == 0) return 1.0;
  return part.moment(k);
}
}  // namespace

MomentTable atom_moments(const ComplexAtom& atom, int order) {
  if (order < 1 || order > 4) throw UsageError("moment order must be 1..4");
  MomentTable table;
  table.order = order;
  // independence of the parts factorizes the mixed moments
  for (int a = 0; a <= order; ++a)
    for (int b = 0; a + b <= order; ++b)
      table.value[a][b] = part_moment(atom.re, a) * part_moment(atom.im, b);
  return table;
}

MatchReport verify_matching(const ComplexAtom& a, const ComplexAtom& b,
                            int order) {
  const MomentTable ta = atom_moments(a, order);
  const MomentTable tb = atom_moments(b, order);
  MatchReport report;
  report.order = order;
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j)
      report.max_abs_discrepancy = std::max(
          report.max_abs_discrepancy, std::abs(ta.value[i][j] - tb.value[i][j]));
  report.matched = report.max_abs_discrepancy <= kMomentTol;
  return report;
}

}  // namespace wigdet
