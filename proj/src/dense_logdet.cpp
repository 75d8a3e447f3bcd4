#include "wigdet/dense_logdet.hpp"

#include <cmath>
#include <limits>

namespace wigdet {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LogDetResult logdet_hermitian(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw ShapeError("logdet_hermitian needs a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h,
                                                         Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  const double largest = ev.cwiseAbs().maxCoeff();
  const double tol = kSingularTol * largest;
  double log_abs = 0.0;
  int negatives = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= tol) return {kNegInf, 0, LogDetMethod::spectral};
    log_abs += std::log(std::abs(ev(i)));
    if (ev(i) < 0) ++negatives;
  }
  return {log_abs, (negatives % 2 == 0) ? 1 : -1, LogDetMethod::spectral};
}

LogDetResult logdet_real_lu(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw ShapeError("logdet_real_lu needs a square matrix");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const auto& u = lu.matrixLU();
  double log_abs = 0.0;
  int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double pivot = u(i, i);
    if (pivot == 0.0) return {kNegInf, 0, LogDetMethod::lu};
    log_abs += std::log(std::abs(pivot));
    if (pivot < 0) sign = -sign;
  }
  return {log_abs, sign, LogDetMethod::lu};
}

double logdet_abs_lu(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw ShapeError("logdet_abs_lu needs a square matrix");
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const auto& u = lu.matrixLU();
  double log_abs = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double pivot = std::abs(u(i, i));
    if (pivot == 0.0) return kNegInf;
    log_abs += std::log(pivot);
  }
  return log_abs;
}

double logdet_shifted(const Eigen::MatrixXcd& m, std::complex<double> z0) {
  const auto n = m.rows();
  if (n != m.cols()) throw ShapeError("logdet_shifted needs a square matrix");
  const double root_n = std::sqrt(static_cast<double>(n));
  if (z0.imag() == 0.0) {
    Eigen::MatrixXcd shifted = m;
    shifted.diagonal().array() -= root_n * z0.real();
    return logdet_hermitian(shifted).log_abs;
  }
  Eigen::MatrixXcd shifted = m;
  shifted.diagonal().array() -= root_n * z0;
  return logdet_abs_lu(shifted);
}

double log_factorial(long long n) {
  if (n < 0) throw UsageError("log_factorial needs n >= 0");
  double sum = 0.0, carry = 0.0;
  for (long long k = 2; k <= n; ++k) {
    const double term = std::log(static_cast<double>(k)) - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return sum;
}

double LawSpec::center(long long n) const {
  const double half_lf = 0.5 * log_factorial(n);
  const double log_n = std::log(static_cast<double>(n));
  switch (law) {
    case Law::gue:
    case Law::goe:
    case Law::iid_complex:
      return half_lf - 0.25 * log_n;
    case Law::iid_real:
      return half_lf - 0.5 * log_n;
  }
  throw UsageError("unknown law");
}

double LawSpec::scale(long long n) const {
  if (n < 2) throw UsageError("law scale needs n >= 2");
  const double log_n = std::log(static_cast<double>(n));
  switch (law) {
    case Law::gue:
    case Law::iid_real:
      return std::sqrt(0.5 * log_n);
    case Law::goe:
      return std::sqrt(log_n);
    case Law::iid_complex:
      return std::sqrt(0.25 * log_n);
  }
  throw UsageError("unknown law");
}

std::string LawSpec::name() const {
  switch (law) {
    case Law::gue: return "gue";
    case Law::goe: return "goe";
    case Law::iid_real: return "iid-real";
    case Law::iid_complex: return "iid-complex";
  }
  return "?";
}

LawSpec LawSpec::from_name(const std::string& name) {
  if (name == "gue") return {Law::gue};
  if (name == "goe") return {Law::goe};
  if (name == "iid-real") return {Law::iid_real};
  if (name == "iid-complex") return {Law::iid_complex};
  throw CatalogError("unknown law: " + name);
}

double standardize_logdet(double log_abs_det, long long n, const LawSpec& law) {
  return (log_abs_det - law.center(n)) / law.scale(n);
}

}  // namespace wigdet
