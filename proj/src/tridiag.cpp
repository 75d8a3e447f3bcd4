#include "wigdet/tridiag.hpp"

#include <cmath>
#include <limits>

#include "wigdet/decomposition.hpp"
#include "wigdet/dense_logdet.hpp"
#include "wigdet/ensembles.hpp"

namespace wigdet {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int sign_of(double x) { return (x > 0) - (x < 0); }

// log|sa*e^la + sb*e^lb| with signs in {-1, 0, +1}
LogDetStep add_signed_exp(double la, int sa, double lb, int sb) {
  if (sa == 0) return {lb, sb};
  if (sb == 0) return {la, sa};
  const double top = std::max(la, lb);
  const double r = sa * std::exp(la - top) + sb * std::exp(lb - top);
  if (r == 0.0) return {kNegInf, 0};
  return {top + std::log(std::abs(r)), sign_of(r)};
}

double polar_angle(double u, double v, int j) {
  const double s = (j % 2 == 0) ? 1.0 : -1.0;
  return std::atan2(s * v, s * u);
}
}  // namespace

TridiagonalModel sample_tridiagonal(int n, int beta, std::uint64_t seed) {
  if (n < 1) throw UsageError("tridiagonal model needs n >= 1");
  if (beta != 1 && beta != 2) throw UsageError("beta must be 1 or 2");
  TridiagonalModel t;
  t.n = n;
  t.beta = beta;
  t.a.resize(n);
  t.b.resize(std::max(0, n - 1));
  rng::Stream stream(seed);
  const double sd = std::sqrt(2.0 / beta);
  for (int i = 0; i < n; ++i) t.a(i) = stream.normal(sd);
  for (int i = 1; i < n; ++i)
    t.b(i - 1) = std::sqrt(stream.gamma(beta * i / 2.0, 2.0 / beta));
  return t;
}

Eigen::MatrixXd tridiagonal_dense(const TridiagonalModel& t) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(t.n, t.n);
  for (int i = 0; i < t.n; ++i) {
    m(i, i) = t.a(i);
    if (i + 1 < t.n) {
      m(i, i + 1) = t.b(i);
      m(i + 1, i) = t.b(i);
    }
  }
  return m;
}

TridiagonalModel householder_tridiagonalize(const Eigen::MatrixXcd& h) {
  const int n = static_cast<int>(h.rows());
  if (h.cols() != n) throw ShapeError("householder needs a square matrix");
  if (!is_hermitian(h, 1e-10)) throw UsageError("householder needs a Hermitian matrix");

  TridiagonalModel t;
  t.n = n;
  t.beta = 0;
  t.a.resize(n);
  t.b.resize(std::max(0, n - 1));
  if (n == 1) {
    t.a(0) = h(0, 0).real();
    return t;
  }

  Eigen::MatrixXcd a = h;
  for (int k = n - 1; k >= 1; --k) {
    // x = column k above the diagonal; map it to |x| e_{k-1}
    Eigen::VectorXcd x = a.col(k).head(k);
    const double norm = x.norm();
    t.b(k - 1) = norm;
    if (norm == 0.0) continue;

    bool already = std::abs(x(k - 1).imag()) == 0.0 && x(k - 1).real() >= 0.0;
    for (int i = 0; already && i < k - 1; ++i)
      if (x(i) != std::complex<double>(0.0, 0.0)) already = false;
    if (already) continue;  // exact fixed point: column is norm * e_{k-1}

    const std::complex<double> pivot = x(k - 1);
    const std::complex<double> phase =
        (pivot == std::complex<double>(0.0, 0.0)) ? 1.0 : pivot / std::abs(pivot);
    const std::complex<double> beta = -phase * norm;

    // v = x - beta e_{k-1}; the reflector I - 2 v v*/(v* v) sends x to beta e
    Eigen::VectorXcd v = x;
    v(k - 1) -= beta;
    const double vsq = v.squaredNorm();

    auto block = a.topLeftCorner(k, k);
    const Eigen::VectorXcd w = block * v * (2.0 / vsq);
    const std::complex<double> kappa = v.dot(w) / vsq;  // v* w / v*v
    const Eigen::VectorXcd w2 = w - kappa * v;
    block.noalias() -= v * w2.adjoint();
    block.noalias() -= w2 * v.adjoint();

    a.col(k).head(k - 1).setZero();
    a.row(k).head(k - 1).setZero();
    a(k - 1, k) = beta;
    a(k, k - 1) = std::conj(beta);

    // rotate the phase of row/column k-1 so the new off-diagonal is |beta|
    const std::complex<double> rot = std::conj(beta / norm);
    a.row(k - 1) *= rot;
    a.col(k - 1) *= std::conj(rot);
    a(k - 1, k) = norm;
    a(k, k - 1) = norm;
  }
  for (int i = 0; i < n; ++i) t.a(i) = a(i, i).real();
  return t;
}

std::vector<LogDetStep> det_recursion_exact(const TridiagonalModel& t) {
  std::vector<LogDetStep> out(t.n);
  LogDetStep prev2{0.0, 1};  // D_0 = 1
  LogDetStep prev{std::log(std::abs(t.a(0))), sign_of(t.a(0))};
  out[0] = prev;
  for (int i = 2; i <= t.n; ++i) {
    const double ai = t.a(i - 1);
    const double bsq = t.b(i - 2) * t.b(i - 2);
    const double la = (ai == 0.0 || prev.sign == 0)
                          ? kNegInf
                          : std::log(std::abs(ai)) + prev.log_abs;
    const int sa = (ai == 0.0) ? 0 : sign_of(ai) * prev.sign;
    const double lb = (bsq == 0.0 || prev2.sign == 0)
                          ? kNegInf
                          : std::log(bsq) + prev2.log_abs;
    const int sb = (bsq == 0.0) ? 0 : -prev2.sign;
    const LogDetStep cur = add_signed_exp(la, sa, lb, sb);
    out[i - 1] = cur;
    prev2 = prev;
    prev = cur;
  }
  return out;
}

int default_start_index(int n) {
  if (n < 16) return 1;
  const double x = std::log(std::log(std::log(static_cast<double>(n))));
  return std::max(1, static_cast<int>(std::floor(x)));
}

Eigen::VectorXd c_sequence(const TridiagonalModel& t) {
  Eigen::VectorXd c(std::max(0, t.n - 1));
  for (int i = 1; i < t.n; ++i)
    c(i - 1) = (t.b(i - 1) * t.b(i - 1) - i) / std::sqrt(static_cast<double>(i));
  return c;
}

DeterminantTrace logdet_trace(const TridiagonalModel& t, int m) {
  if (t.n < 2 || t.n % 2 != 0)
    throw UsageError("paired determinant trace needs even n >= 2");
  if (m == 0) m = default_start_index(t.n);
  const int half = t.n / 2;
  if (m < 1 || m > half) throw UsageError("start index must lie in [1, n/2]");

  const Eigen::VectorXd c = c_sequence(t);

  DeterminantTrace trace;
  trace.n = t.n;
  trace.m = m;
  trace.logF.reserve(half - m + 1);
  trace.theta.reserve(half - m + 1);
  trace.h.reserve(half - m);

  // exact normalized recursion E_i = D_i / sqrt(i!) up to the start pair
  double e_prev2 = 1.0;       // E_0
  double e_prev = t.a(0);     // E_1
  for (int i = 2; i <= 2 * m; ++i) {
    const double inv_sqrt_i = 1.0 / std::sqrt(static_cast<double>(i));
    const double e_i =
        t.a(i - 1) * inv_sqrt_i * e_prev -
        (std::sqrt((i - 1.0) / i) + c(i - 2) * inv_sqrt_i) * e_prev2;
    e_prev2 = e_prev;
    e_prev = e_i;
  }
  const double f_start = e_prev * e_prev + e_prev2 * e_prev2;
  if (f_start == 0.0 || !std::isfinite(f_start))
    throw DegenerateTraceError("determinant pair vanished at the start index");

  double log_f = std::log(f_start);
  const double inv_norm = 1.0 / std::sqrt(f_start);
  double u = e_prev * inv_norm;   // E_{2m} direction
  double v = e_prev2 * inv_norm;  // E_{2m-1} direction
  trace.logF.push_back(log_f);
  trace.theta.push_back(polar_angle(u, v, m));

  for (int j = m + 1; j <= half; ++j) {
    const int i_odd = 2 * j - 1;
    const int i_even = 2 * j;
    const double a_odd = t.a(i_odd - 1);
    const double a_even = t.a(i_even - 1);
    const double c_odd = c(i_odd - 2);    // c_{2j-2}
    const double c_even = c(i_even - 2);  // c_{2j-1}

    trace.h.push_back(h_value(trace.theta.back(), a_even, a_odd, c_even, c_odd));

    const double inv_sqrt_odd = 1.0 / std::sqrt(static_cast<double>(i_odd));
    const double e1 =
        a_odd * inv_sqrt_odd * u -
        (std::sqrt((i_odd - 1.0) / i_odd) + c_odd * inv_sqrt_odd) * v;
    const double inv_sqrt_even = 1.0 / std::sqrt(static_cast<double>(i_even));
    const double e0 =
        a_even * inv_sqrt_even * e1 -
        (std::sqrt((i_even - 1.0) / i_even) + c_even * inv_sqrt_even) * u;

    const double r2 = e0 * e0 + e1 * e1;
    if (r2 == 0.0 || !std::isfinite(r2))
      throw DegenerateTraceError("determinant pair vanished during the trace");
    log_f += std::log(r2);
    const double inv_r = 1.0 / std::sqrt(r2);
    u = e0 * inv_r;
    v = e1 * inv_r;
    trace.logF.push_back(log_f);
    trace.theta.push_back(polar_angle(u, v, j));
  }

  // E_n = (-1)^(n/2) sqrt(F) cos(theta), so |cos theta| = |u|
  trace.log_abs_En = 0.5 * trace.logF.back() + std::log(std::abs(u));
  trace.sign_n = sign_of(u);
  trace.log_abs_Dn = trace.log_abs_En + 0.5 * log_factorial(t.n);
  return trace;
}

}  // namespace wigdet
