#include "wigdet/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wigdet/dense_logdet.hpp"
#include "wigdet/parallel.hpp"

namespace wigdet {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::complex<double> kI{0.0, 1.0};
}  // namespace

double opnorm(const Eigen::MatrixXcd& a, NormPair pair) {
  switch (pair) {
    case NormPair::inf_one:
      return a.cwiseAbs().maxCoeff();
    case NormPair::inf_two:
      return std::sqrt(a.cwiseAbs2().rowwise().sum().maxCoeff());
    case NormPair::two_two:
      return a.jacobiSvd().singularValues()(0);
    case NormPair::two_one:
      // extreme points of the l1 ball are +-e_j, so this is the max column
      // l2 norm; duality with (inf,2) of the adjoint is checked in tests
      return std::sqrt(a.cwiseAbs2().colwise().sum().maxCoeff());
  }
  throw UsageError("unknown norm pair");
}

NormPair norm_pair_from_name(const std::string& name) {
  if (name == "inf,1") return NormPair::inf_one;
  if (name == "inf,2") return NormPair::inf_two;
  if (name == "2,2") return NormPair::two_two;
  if (name == "2,1") return NormPair::two_one;
  throw CatalogError("unknown norm pair: " + name);
}

ElementaryMatrix ElementaryMatrix::diagonal(int a) {
  if (a < 0) throw UsageError("elementary index must be >= 0");
  return {Form::diagonal, a, a};
}

ElementaryMatrix ElementaryMatrix::symmetric(int a, int b) {
  if (a < 0 || b < 0 || a == b)
    throw UsageError("two-index elementary matrix needs distinct indices");
  return {Form::symmetric, a, b};
}

ElementaryMatrix ElementaryMatrix::antisymmetric(int a, int b) {
  if (a < 0 || b < 0 || a == b)
    throw UsageError("two-index elementary matrix needs distinct indices");
  return {Form::antisymmetric, a, b};
}

Eigen::MatrixXcd ElementaryMatrix::to_matrix(int n) const {
  if (a >= n || b >= n) throw UsageError("elementary index out of range");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  switch (form) {
    case Form::diagonal:
      m(a, a) = 1.0;
      break;
    case Form::symmetric:
      m(a, b) = 1.0;
      m(b, a) = 1.0;
      break;
    case Form::antisymmetric:
      m(a, b) = kI;
      m(b, a) = -kI;
      break;
  }
  return m;
}

Eigen::MatrixXcd resolvent(const Eigen::MatrixXcd& w, std::complex<double> z) {
  const auto n = w.rows();
  if (w.cols() != n) throw ShapeError("resolvent needs a square matrix");
  if (z.imag() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(w, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = solver.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    if ((ev.array() - z.real()).abs().minCoeff() <= 1e-12 * scale)
      throw SingularError("resolvent at a real point of the spectrum");
  }
  Eigen::MatrixXcd shifted = w;
  shifted.diagonal().array() -= z;
  return shifted.partialPivLu().solve(
      Eigen::MatrixXcd::Identity(n, n));
}

std::complex<double> stieltjes(const Eigen::MatrixXcd& w, std::complex<double> z) {
  if (z.imag() <= 0.0) throw UsageError("stieltjes transform needs Im z > 0");
  return resolvent(w, z).trace() / static_cast<double>(w.rows());
}

TaylorCoefficients taylor_coefficients(const Eigen::MatrixXcd& r0,
                                       const ElementaryMatrix& v, int k) {
  if (k < 1) throw UsageError("taylor order must be >= 1");
  const auto n = r0.rows();
  const Eigen::MatrixXcd vm = v.to_matrix(static_cast<int>(n));
  const Eigen::MatrixXcd a = r0 * vm;  // (R0 V)
  const Eigen::MatrixXcd r0sq = r0 * r0;

  TaylorCoefficients out;
  out.c.reserve(k);
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(n, n);  // (R0 V)^(j-1)
  for (int j = 1; j <= k; ++j) {
    const Eigen::MatrixXcd direct = a * power * r0;    // (R0 V)^j R0
    const std::complex<double> tr_direct = direct.trace();
    const std::complex<double> tr_cyclic = (vm * power * r0sq).trace();
    out.cyclic_residual =
        std::max(out.cyclic_residual,
                 std::abs(tr_direct - tr_cyclic) / std::max(1.0, std::abs(tr_direct)));
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    out.c.push_back(sign * tr_direct / static_cast<double>(n));
    power = power * a;
  }
  return out;
}

Eigen::MatrixXcd neumann_sum(const Eigen::MatrixXcd& r0,
                             const ElementaryMatrix& v, double t, int k) {
  const auto n = r0.rows();
  const double root_n = std::sqrt(static_cast<double>(n));
  if (std::abs(t) * opnorm(r0, NormPair::inf_one) >= 0.5 * root_n)
    throw PreconditionError("neumann series out of its convergence regime");
  const Eigen::MatrixXcd vm = v.to_matrix(static_cast<int>(n));
  Eigen::MatrixXcd sum = r0;
  Eigen::MatrixXcd term = r0;
  const double factor = -t / root_n;
  for (int j = 1; j <= k; ++j) {
    term = factor * (r0 * (vm * term));
    sum += term;
  }
  return sum;
}

RemainderProbe expansion_remainder_probe(const Eigen::MatrixXcd& m0,
                                         const ElementaryMatrix& v,
                                         std::complex<double> z, double t,
                                         int k) {
  const auto n = m0.rows();
  const double root_n = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXcd r0 = resolvent(m0, z);
  const Eigen::MatrixXcd mt = m0 + (t / root_n) * v.to_matrix(static_cast<int>(n));

  RemainderProbe probe;
  probe.direct = resolvent(mt, z).trace() / static_cast<double>(n);
  std::complex<double> s = r0.trace() / static_cast<double>(n);
  if (k >= 1) {
    const TaylorCoefficients coeffs = taylor_coefficients(r0, v, k);
    double tj = 1.0;
    for (int j = 1; j <= k; ++j) {
      tj *= t / root_n;
      s += coeffs.c[j - 1] * tj;
    }
  }
  probe.truncated = s;
  probe.remainder = probe.direct - probe.truncated;
  return probe;
}

ResolventExpansion resolvent_expansion(const Eigen::MatrixXcd& m0,
                                       const ElementaryMatrix& v,
                                       std::complex<double> z, double t,
                                       int k) {
  if (k < 1) throw UsageError("expansion order must be >= 1");
  const auto n = m0.rows();
  ResolventExpansion out;
  out.z = z;
  out.t = t;
  out.v = v;
  out.k = k;
  const Eigen::MatrixXcd r0 = resolvent(m0, z);
  out.norm_inf1 = opnorm(r0, NormPair::inf_one);
  out.coeffs = taylor_coefficients(r0, v, k).c;
  out.remainder = expansion_remainder_probe(m0, v, z, t, k).remainder;
  const double envelope =
      std::min(out.norm_inf1, 1.0 / (static_cast<double>(n) * z.imag()));
  double power = 1.0;
  for (int j = 1; j <= k; ++j) {
    power *= out.norm_inf1;
    out.envelope_ratio =
        std::max(out.envelope_ratio,
                 std::abs(out.coeffs[j - 1]) /
                     (out.envelope_constant * power * envelope));
  }
  return out;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double fa, double b, double fb, double fm, double whole,
                        double tol, int depth, std::size_t& evals) {
  const double mid = 0.5 * (a + b);
  const double lm = 0.5 * (a + mid);
  const double rm = 0.5 * (mid + b);
  const double flm = f(lm);
  const double frm = f(rm);
  evals += 2;
  const double left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0)
    throw ToleranceError("quadrature failed to converge to the tolerance");
  return adaptive_simpson(f, a, fa, mid, fm, flm, left, 0.5 * tol, depth - 1, evals) +
         adaptive_simpson(f, mid, fm, b, fb, frm, right, 0.5 * tol, depth - 1, evals);
}

double integrate_segment(const std::function<double(double)>& f, double a,
                         double b, double tol, std::size_t& evals) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  evals += 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, fa, b, fb, fm, whole, tol, 40, evals);
}

}  // namespace

FtcResult ftc_logdet_identity(const Eigen::MatrixXcd& w,
                              std::complex<double> z0, double t_top,
                              double quad_tol) {
  const auto n = w.rows();
  const double energy = z0.real();
  const double eta0 = z0.imag();
  if (eta0 < 0) throw UsageError("ftc identity needs Im z0 >= 0");
  if (t_top < eta0) throw UsageError("ftc identity needs T >= Im z0");

  Eigen::MatrixXcd shifted = w;
  shifted.diagonal().array() -= z0;
  FtcResult out;
  out.lhs = logdet_abs_lu(shifted);
  if (out.lhs == kNegInf)
    throw SingularError("z0 lies on the spectrum");
  shifted = w;
  shifted.diagonal().array() -= std::complex<double>(energy, t_top);
  out.at_top = logdet_abs_lu(shifted);

  // n Im s(E + i eta) equals the imaginary part of the resolvent trace; a
  // real endpoint is fine since the integrand vanishes when E avoids the
  // spectrum
  auto integrand = [&](double eta) {
    return resolvent(w, {energy, eta}).trace().imag();
  };

  double integral = 0.0;
  if (t_top > eta0) {
    // geometric segmentation: the integrand lives on scales from the
    // spectral gap up to T
    std::vector<double> points;
    points.push_back(eta0);
    const double lo = std::max(eta0, 1e-6);
    for (double p = lo; p < t_top; p *= 4.0)
      if (p > points.back()) points.push_back(p);
    points.push_back(t_top);

    const double seg_tol = 0.25 * quad_tol / static_cast<double>(points.size());
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
      integral += integrate_segment(integrand, points[i], points[i + 1],
                                    seg_tol, out.evaluations);
  }
  out.integral = integral;
  out.residual = std::abs(out.lhs - out.at_top + out.integral);
  return out;
}

SpectralDiagnostics spectral_diagnostics(
    const Eigen::MatrixXcd& w, double energy,
    const std::vector<std::pair<double, double>>& intervals) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(w);
  const Eigen::VectorXd ev = solver.eigenvalues();
  SpectralDiagnostics diag;
  diag.n = static_cast<int>(w.rows());
  diag.min_gap = (ev.array() - energy).abs().minCoeff();
  for (const auto& [lo, hi] : intervals) {
    int count = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev(i) >= lo && ev(i) <= hi) ++count;
    diag.interval_counts.push_back({{lo, hi}, count});
  }
  diag.deloc = solver.eigenvectors().cwiseAbs().maxCoeff();
  return diag;
}

namespace {
// sup_u |d^j/du^j exp(-u^2)| <= 33 for 0 <= j <= 5
constexpr double kBumpScale = 1.0 / 34.0;
}

double TestFunction::operator()(double x) const {
  if (x == kNegInf) return 0.0;
  const double u = (x - mu) / width;
  if (id == "bump") return kBumpScale * std::exp(-u * u);
  if (id == "cosine") return std::cos(u);
  return 1.0 / (1.0 + std::exp(-u));  // logistic
}

TestFunction TestFunction::make(const std::string& id, double mu, double width) {
  const auto& names = catalog();
  if (std::find(names.begin(), names.end(), id) == names.end())
    throw CatalogError("unknown test function: " + id);
  if (width < 1.0) throw UsageError("test function width must be >= 1");
  return {id, mu, width};
}

const std::vector<std::string>& TestFunction::catalog() {
  static const std::vector<std::string> names = {"bump", "cosine", "logistic"};
  return names;
}

SwapResult swap_experiment(const EnsembleSpec& ens_a, const EnsembleSpec& ens_b,
                           int n, std::complex<double> z0,
                           const TestFunction& g, std::size_t replicates,
                           std::uint64_t seed, unsigned workers) {
  if (replicates < 2) throw UsageError("swap experiment needs >= 2 replicates");
  std::vector<double> ga(replicates), gb(replicates);
  for_each_replicate(replicates, workers, [&](std::size_t r) {
    const std::uint64_t rep_seed = rng::derive_seed(seed, r);
    ga[r] = g(logdet_shifted(sample_matrix(ens_a, n, rep_seed), z0));
    gb[r] = g(logdet_shifted(sample_matrix(ens_b, n, rep_seed), z0));
  });
  auto mean_se = [&](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double sq = 0.0;
    for (double x : v) sq += (x - mean) * (x - mean);
    const double se = std::sqrt(sq / (v.size() - 1.0) / v.size());
    return std::pair<double, double>(mean, se);
  };
  const auto [ma, sa] = mean_se(ga);
  const auto [mb, sb] = mean_se(gb);
  SwapResult out;
  out.mean_a = ma;
  out.mean_b = mb;
  out.diff = ma - mb;
  out.stderr_a = sa;
  out.stderr_b = sb;
  out.pooled_stderr = std::sqrt(sa * sa + sb * sb);
  out.replicates = replicates;
  return out;
}

}  // namespace wigdet
