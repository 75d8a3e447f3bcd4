#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "wigdet/rng.hpp"
#include "wigdet/stats.hpp"

using namespace wigdet;

namespace {
// inverse standard normal CDF by bisection (test oracle)
double normal_quantile(double p) {
  double lo = -10, hi = 10;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std_normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("one-sample KS on plug-in quantiles gives D = 1/(2N)") {
  const int n = 50;
  std::vector<double> x(n);
  for (int i = 1; i <= n; ++i) x[i - 1] = normal_quantile((i - 0.5) / n);
  const KSResult r = ks_one_sample(x, "std-normal");
  CHECK(r.d == doctest::Approx(1.0 / (2 * n)).epsilon(1e-9));
}

TEST_CASE("one-sample KS edge cases") {
  std::vector<double> zeros(40, 0.0);
  const KSResult r = ks_one_sample(zeros, "std-normal");
  CHECK(r.d == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(kolmogorov_p(10.0) < 1e-80);
  CHECK(kolmogorov_p(0.01) == 1.0);

  // p decreases in D at fixed N
  double last = 1.0;
  for (double d = 0.02; d <= 0.5; d += 0.02) {
    const double p = kolmogorov_p(std::sqrt(100.0) * d);
    CHECK(p <= last + 1e-15);
    last = p;
  }

  std::vector<double> bad = {0.0, 1.0, 2.0, 3.0,
                             std::numeric_limits<double>::quiet_NaN()};
  CHECK_THROWS_AS(ks_one_sample(bad, "std-normal"), NumericalError);
  std::vector<double> small = {0.0, 1.0, 2.0};
  CHECK_THROWS_AS(ks_one_sample(small, "std-normal"), UsageError);
  std::vector<double> ok(10, 0.5);
  CHECK_THROWS_AS(ks_one_sample(ok, "cauchy"), CatalogError);
}

TEST_CASE("two-sample KS") {
  std::vector<double> x = {1, 2, 3, 4, 5, 6};
  CHECK(ks_two_sample(x, x).d == 0.0);

  std::vector<double> lo = {1, 2, 3, 4, 5};
  std::vector<double> hi = {10, 11, 12, 13, 14};
  CHECK(ks_two_sample(lo, hi).d == doctest::Approx(1.0));

  rng::Stream s(8);
  std::vector<double> a(300), b(200);
  for (auto& v : a) v = s.normal();
  for (auto& v : b) v = s.normal() + 0.3;
  const KSResult ab = ks_two_sample(a, b);
  const KSResult ba = ks_two_sample(b, a);
  CHECK(ab.d == doctest::Approx(ba.d));  // symmetric
  CHECK(ab.p_approx == doctest::Approx(ba.p_approx));

  // D is invariant under a common strictly increasing transform
  std::vector<double> ea(a), eb(b);
  for (auto& v : ea) v = std::exp(v);
  for (auto& v : eb) v = std::exp(v);
  CHECK(ks_two_sample(ea, eb).d == doctest::Approx(ab.d).epsilon(1e-12));

  // identical-law samples should not reject
  std::vector<double> c(400), d(400);
  for (auto& v : c) v = s.normal();
  for (auto& v : d) v = s.normal();
  CHECK(ks_two_sample(c, d).p_approx > 0.001);
}

TEST_CASE("summary statistics") {
  const SummaryStats tiny = summary({-1.0, 0.0, 1.0});
  CHECK(tiny.mean == doctest::Approx(0.0));
  CHECK(tiny.variance == doctest::Approx(1.0));

  const SummaryStats flat = summary({2.0, 2.0, 2.0, 2.0});
  CHECK(flat.variance == 0.0);

  rng::Stream s(9);
  std::vector<double> x(100000);
  for (auto& v : x) v = s.normal();
  const SummaryStats big = summary(x);
  CHECK(std::abs(big.mean) < 3.0 * big.mean_stderr);
  CHECK(std::abs(big.variance - 1.0) < 3.0 * big.variance_stderr);
  CHECK(std::abs(big.skewness) < 3.0 * big.skewness_stderr);
  CHECK(std::abs(big.excess_kurtosis) < 3.0 * big.kurtosis_stderr);

  // permutation invariance
  std::vector<double> y(x.rbegin(), x.rend());
  const SummaryStats rev = summary(y);
  CHECK(rev.mean == doctest::Approx(big.mean));
  CHECK(rev.variance == doctest::Approx(big.variance));

  CHECK_THROWS_AS(summary({1.0}), UsageError);
}

TEST_CASE("ecdf and histogram tables") {
  const auto step = ecdf_table({1.0}, {0.0, 1.0, 2.0,
                                       std::numeric_limits<double>::infinity()});
  CHECK(step[0].second == 0.0);
  CHECK(step[1].second == 1.0);
  CHECK(step[3].second == 1.0);  // ECDF at +inf

  rng::Stream s(10);
  std::vector<double> x(5000);
  for (auto& v : x) v = s.normal();
  const Histogram h = histogram(x, 32);
  std::size_t total = 0;
  for (auto c : h.counts) total += c;
  CHECK(total == x.size());
  CHECK(h.edges.size() == 33);
}
