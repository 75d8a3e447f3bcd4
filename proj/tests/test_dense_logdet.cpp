#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "wigdet/dense_logdet.hpp"
#include "wigdet/ensembles.hpp"

using namespace wigdet;

TEST_CASE("logdet_hermitian on fixed inputs") {
  const auto id3 = Eigen::MatrixXcd::Identity(3, 3);
  const LogDetResult r = logdet_hermitian(id3);
  CHECK(r.log_abs == doctest::Approx(0.0));
  CHECK(r.sign == 1);

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = -3.0;
  const LogDetResult r2 = logdet_hermitian(d);
  CHECK(r2.log_abs == doctest::Approx(std::log(6.0)).epsilon(1e-14));
  CHECK(r2.sign == -1);

  Eigen::MatrixXcd singular = Eigen::MatrixXcd::Zero(2, 2);
  singular(0, 0) = 1.0;
  const LogDetResult r3 = logdet_hermitian(singular);
  CHECK(r3.singular());
  CHECK(r3.log_abs == -std::numeric_limits<double>::infinity());
}

TEST_CASE("real LU logdet agrees with a full-pivot oracle") {
  rng::Stream s(5);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::MatrixXd a(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) a(i, j) = s.normal();
    const LogDetResult mine = logdet_real_lu(a);
    const auto [log_abs, sign] = oracles::dense_logdet_sign(a);
    CHECK(mine.log_abs == doctest::Approx(log_abs).epsilon(1e-12));
    CHECK(mine.sign == sign);
  }
}

TEST_CASE("logdet_shifted: scalar case and spectral cross-check") {
  Eigen::MatrixXcd zero1 = Eigen::MatrixXcd::Zero(1, 1);
  // |det(0 - i)| = 1
  CHECK(logdet_shifted(zero1, {0.0, 1.0}) == doctest::Approx(0.0));

  const EnsembleSpec gue = make_ensemble("gue");
  const Eigen::MatrixXcd m = sample_matrix(gue, 16, 31);
  const std::complex<double> z0{0.3, 0.1};

  // independent spectral route: (n/2) log n + sum log|lambda(W) - z0|
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m / 4.0, Eigen::EigenvaluesOnly);
  double spectral = 16.0 / 2.0 * std::log(16.0);
  for (int i = 0; i < 16; ++i)
    spectral += std::log(std::abs(es.eigenvalues()(i) - z0));
  CHECK(logdet_shifted(m, z0) == doctest::Approx(spectral).epsilon(1e-10));

  // real shift reduces to the Hermitian spectral path
  Eigen::MatrixXcd shifted = m;
  shifted.diagonal().array() -= 4.0 * 0.3;
  CHECK(logdet_shifted(m, {0.3, 0.0}) ==
        doctest::Approx(logdet_hermitian(shifted).log_abs).epsilon(1e-13));
}

TEST_CASE("log_factorial: exact small values and the Stirling series") {
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(1) == 0.0);
  CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
  const double big = log_factorial(1000000);
  CHECK(big == doctest::Approx(oracles::stirling_log_factorial(1e6)).epsilon(1e-9));
}

TEST_CASE("standardization laws") {
  const LawSpec gue{Law::gue};
  const long long n = 256;
  CHECK(gue.center(n) ==
        doctest::Approx(0.5 * log_factorial(n) - 0.25 * std::log(256.0)));
  CHECK(gue.scale(n) == doctest::Approx(std::sqrt(0.5 * std::log(256.0))));
  CHECK(standardize_logdet(gue.center(n), n, gue) == doctest::Approx(0.0));
  CHECK(standardize_logdet(gue.center(n) + gue.scale(n), n, gue) ==
        doctest::Approx(1.0));

  const LawSpec goe{Law::goe};
  CHECK(goe.center(n) == doctest::Approx(gue.center(n)));
  CHECK(goe.scale(n) == doctest::Approx(std::sqrt(std::log(256.0))));

  const LawSpec iid_r{Law::iid_real};
  CHECK(iid_r.center(n) ==
        doctest::Approx(0.5 * log_factorial(n) - 0.5 * std::log(256.0)));
  CHECK(iid_r.scale(n) == doctest::Approx(std::sqrt(0.5 * std::log(256.0))));

  const LawSpec iid_c{Law::iid_complex};
  CHECK(iid_c.center(n) == doctest::Approx(gue.center(n)));
  CHECK(iid_c.scale(n) == doctest::Approx(std::sqrt(0.25 * std::log(256.0))));

  CHECK(LawSpec::from_name("iid-real").law == Law::iid_real);
  CHECK_THROWS_AS(LawSpec::from_name("beta"), CatalogError);
}

TEST_CASE("spectrum invariance under random unitary conjugation") {
  const EnsembleSpec gue = make_ensemble("gue");
  const Eigen::MatrixXcd m = sample_matrix(gue, 24, 8);
  // unitary from QR of a Ginibre draw
  const Eigen::MatrixXcd g = sample_matrix(make_ensemble("iid-gaussian-complex"), 24, 9);
  const Eigen::MatrixXcd q =
      Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
  const LogDetResult base = logdet_hermitian(m);
  const LogDetResult conj = logdet_hermitian(q * m * q.adjoint());
  CHECK(conj.log_abs == doctest::Approx(base.log_abs).epsilon(1e-9));
  CHECK(conj.sign == base.sign);
}
