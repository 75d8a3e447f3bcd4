#include <doctest.h>

#include <cmath>
#include <complex>

#include "wigdet/ensembles.hpp"

using namespace wigdet;

TEST_CASE("catalog structure of the Gaussian ensembles") {
  const EnsembleSpec gue = make_ensemble("gue");
  CHECK(gue.offdiag.re.variance() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gue.offdiag.im.variance() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gue.diag.variance() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gue.sigma2 == 1.0);

  const EnsembleSpec goe = make_ensemble("goe");
  CHECK(goe.offdiag.re.variance() == doctest::Approx(1.0));
  CHECK(goe.offdiag.im.is_zero());
  CHECK(goe.diag.variance() == doctest::Approx(2.0));
  CHECK(goe.sigma2 == 2.0);

  CHECK_THROWS_AS(make_ensemble("no-such"), CatalogError);
}

TEST_CASE("every catalog ensemble satisfies the variance identities exactly") {
  for (const auto& name : ensemble_catalog()) {
    const EnsembleSpec spec = make_ensemble(name);
    CHECK(std::abs(spec.offdiag.total_variance() - 1.0) <= 1e-12);
    CHECK(std::abs(spec.diag.variance() - spec.sigma2) <= 1e-12);
    CHECK(std::abs(spec.offdiag.re.moment(1)) <= 1e-12);
    CHECK(std::abs(spec.offdiag.im.moment(1)) <= 1e-12);
  }
}

TEST_CASE("three-point matched ensemble solves the moment equations") {
  const EnsembleSpec m3 = make_ensemble("gue-matched-threepoint");
  const auto& atom = m3.offdiag.re;
  REQUIRE(atom.points().size() == 3);
  CHECK(atom.points()[0] == doctest::Approx(-std::sqrt(1.5)).epsilon(1e-14));
  CHECK(atom.points()[2] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  CHECK(atom.probs()[0] == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(atom.probs()[1] == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(std::abs(atom.moment(2) - 0.5) <= 1e-12);
  CHECK(std::abs(atom.moment(4) - 0.75) <= 1e-12);

  const EnsembleSpec gue = make_ensemble("gue");
  CHECK(verify_matching(gue.offdiag, m3.offdiag, 4).matched);
  // diagonal matches through order two
  const ComplexAtom diag_a{gue.diag, AtomDistribution::zero()};
  const ComplexAtom diag_b{m3.diag, AtomDistribution::zero()};
  CHECK(verify_matching(diag_a, diag_b, 2).matched);

  const EnsembleSpec g3 = make_ensemble("goe-matched-threepoint");
  CHECK(verify_matching(make_ensemble("goe").offdiag, g3.offdiag, 4).matched);
}

TEST_CASE("moment tables") {
  const EnsembleSpec gue = make_ensemble("gue");
  const MomentTable t = atom_moments(gue.offdiag, 4);
  CHECK(t(2, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t(4, 0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(t(2, 2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(t(1, 0) == 0.0);
  CHECK(t(3, 1) == 0.0);

  const AtomDistribution rademacher = AtomDistribution::two_point(1.0);
  CHECK(rademacher.moment(2) == doctest::Approx(1.0));
  CHECK(rademacher.moment(4) == doctest::Approx(1.0));
}

TEST_CASE("verify_matching separates matched from unmatched") {
  const EnsembleSpec gue = make_ensemble("gue");
  const MatchReport self = verify_matching(gue.offdiag, gue.offdiag, 4);
  CHECK(self.matched);
  CHECK(self.max_abs_discrepancy == 0.0);

  const EnsembleSpec bern = make_ensemble("bernoulli-complex");
  const MatchReport mixed = verify_matching(gue.offdiag, bern.offdiag, 4);
  CHECK_FALSE(mixed.matched);
  // fourth moments per part: 3/4 for a N(0,1/2) Gaussian vs 1/4 for +-1/sqrt(2)
  CHECK(mixed.max_abs_discrepancy == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(verify_matching(gue.offdiag, bern.offdiag, 2).matched);
}

TEST_CASE("sample_matrix basics") {
  const EnsembleSpec gue = make_ensemble("gue");
  const Eigen::MatrixXcd one = sample_matrix(gue, 1, 5);
  CHECK(one.rows() == 1);
  CHECK(one(0, 0).imag() == 0.0);

  const Eigen::MatrixXcd a = sample_matrix(gue, 16, 99);
  const Eigen::MatrixXcd b = sample_matrix(gue, 16, 99);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);  // bit-identical
  CHECK(is_hermitian(a));

  const Eigen::MatrixXcd c = sample_matrix(gue, 16, 100);
  CHECK((a - c).cwiseAbs().maxCoeff() > 0.0);

  const EnsembleSpec iid = make_ensemble("iid-gaussian-real");
  const Eigen::MatrixXcd d = sample_matrix(iid, 8, 7);
  CHECK(d.imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK_FALSE(is_hermitian(d, 1e-9));
}

TEST_CASE("empirical atom moments stay within four standard errors") {
  for (const auto& name : ensemble_catalog()) {
    const EnsembleSpec spec = make_ensemble(name);
    auto stream = rng::Stream(1234);
    const int n = 100000;
    double sums[5] = {};
    std::vector<double> draws(n);
    for (int i = 0; i < n; ++i) {
      const double x = spec.offdiag.re.sample(stream);
      draws[i] = x;
      double p = x;
      for (int k = 1; k <= 4; ++k, p *= x) sums[k] += p;
    }
    for (int k = 1; k <= 4; ++k) {
      const double mean = sums[k] / n;
      double var = 0.0;
      for (double x : draws) var += std::pow(std::pow(x, k) - mean, 2);
      const double se = std::sqrt(var / (n - 1.0) / n);
      CHECK(std::abs(mean - spec.offdiag.re.moment(k)) <=
            4.0 * std::max(se, 1e-12));
    }
  }
}

TEST_CASE("GUE off-diagonal sampling hits unit total variance") {
  const EnsembleSpec gue = make_ensemble("gue");
  const int n = 100000;
  auto stream = rng::Stream(777);
  double sq = 0.0;
  for (int i = 0; i < n; ++i) sq += std::norm(gue.offdiag.sample(stream));
  // |z|^2 has mean 1 and variance 1 for the complex Gaussian
  CHECK(std::abs(sq / n - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
}
