#pragma once

#include <cmath>
#include <cstdint>

namespace wigdet::rng {

// SplitMix64 (Steele/Lea/Vigna).  One word of state with a full-avalanche
// output function; streams seeded with distinct derived seeds behave as
// independent generators.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Stream-derivation contract, frozen so reports stay reproducible from the
// root seed alone: substream `index` of `root` is seeded with
// mix64(root + (index + 1) * 0x9e3779b97f4a7c15).
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return mix64(root + (index + 1) * 0x9e3779b97f4a7c15ull);
}

// Sequential variate stream.  All samplers consume the underlying 64-bit
// sequence deterministically, so (seed -> output) is a pure function.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : gen_(seed) {}

  static Stream substream(std::uint64_t root, std::uint64_t index) {
    return Stream(derive_seed(root, index));
  }

  std::uint64_t bits() { return gen_.next(); }

  // uniform on (0, 1]; never 0, so log() stays finite
  double uniform01() {
    return static_cast<double>((bits() >> 11) + 1) * 0x1.0p-53;
  }

  // standard normal via Box-Muller; the second variate of each pair is cached
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double a = 2.0 * 3.14159265358979323846 * uniform01();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  double normal(double stddev) { return stddev * normal(); }

  // Gamma(shape, scale): Marsaglia-Tsang squeeze for shape >= 1, and the
  // power-of-uniform boost for shape < 1 (needed down to shape 1/2).
  double gamma(double shape, double scale) {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0, scale);
      return g * std::pow(uniform01(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01();
      if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v * scale;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
  }

 private:
  SplitMix64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace wigdet::rng
