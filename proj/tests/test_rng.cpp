#include <doctest.h>

#include <cmath>
#include <vector>

#include "wigdet/rng.hpp"

using namespace wigdet;

TEST_CASE("streams are deterministic and substreams differ") {
  rng::Stream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());

  rng::Stream s0 = rng::Stream::substream(42, 0);
  rng::Stream s1 = rng::Stream::substream(42, 1);
  CHECK(s0.bits() != s1.bits());
  CHECK(rng::derive_seed(42, 0) != rng::derive_seed(43, 0));
}

TEST_CASE("uniform01 lies in (0, 1]") {
  rng::Stream s(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform01();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("normal moments") {
  rng::Stream s(11);
  const int n = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal();
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("gamma moments across the shape split") {
  rng::Stream s(13);
  for (double shape : {0.5, 1.0, 3.5, 17.0}) {
    const double scale = 2.0;
    const int n = 200000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
      const double x = s.gamma(shape, scale);
      CHECK(x > 0.0);
      sum += x;
      sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    const double true_mean = shape * scale;
    const double true_var = shape * scale * scale;
    // se(mean) = sd/sqrt(n); se(var) ~ sqrt((m4 - var^2)/n) with
    // m4 = (3 shape^2 + 6 shape) scale^4 central
    const double se_mean = std::sqrt(true_var / n);
    const double m4 = (3 * shape * shape + 6 * shape) * std::pow(scale, 4);
    const double se_var = std::sqrt((m4 - true_var * true_var) / n);
    CHECK(std::abs(mean - true_mean) < 4 * se_mean);
    CHECK(std::abs(var - true_var) < 4 * se_var);
  }
}
