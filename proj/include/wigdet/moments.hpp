#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wigdet/ensembles.hpp"
#include "wigdet/errors.hpp"

namespace wigdet {

using BigInt = boost::multiprecision::cpp_int;

struct Permutation {
  std::vector<int> images;  // 0-based bijection on {0..n-1}

  static Permutation identity(int n);
  int size() const { return static_cast<int>(images.size()); }
  bool valid() const;
};

struct CycleType {
  std::vector<int> counts;  // counts[k-1] = number of k-cycles

  int count(int k) const {
    return (k >= 1 && k <= static_cast<int>(counts.size())) ? counts[k - 1] : 0;
  }
};

CycleType cycle_type(const Permutation& p);

enum class MomentClass { goe, gue };
MomentClass moment_class_from_name(const std::string& name);

// E[I_sigma conj(I_rho)] for the signed Leibniz products, by the cycle rules:
// GOE pairs cycles of length != 2 up to reversal and requires equal 2-cycle
// supports, giving 2^C1 3^c; GUE requires exact cycles of length >= 3 and
// gives 2^c, with unit diagonal factors.
BigInt pair_expectation(const Permutation& sigma, const Permutation& rho,
                        MomentClass cls);

BigInt factorial_exact(int n);
BigInt binomial_exact(int n, int k);
// matchings on {1..n}: n!/((n/2)! 2^(n/2)) for even n, 0 for odd n
BigInt perfect_matching_count(int n);

// (-1)^(n/2) * perfect_matching_count(n); 0 for odd n
BigInt first_moment_exact(int n);

// Leibniz-rule enumeration of E det over single permutations (n <= 10)
BigInt first_moment_enumerated(int n);

struct ExactMoment {
  BigInt value;
  int n = 0;
  int order = 0;  // 1 or 2
  MomentClass cls = MomentClass::goe;
};

// Full (n!)^2 pair enumeration; n <= 7.
ExactMoment second_moment_bruteforce(int n, MomentClass cls);

struct CompatibleCount {
  BigInt enumerated;  // number of rho with pair_expectation != 0
  BigInt formula;     // (2 C2)!/(C2! 2^C2) * prod_{k>=3} 2^(C_k) for GOE
};

CompatibleCount compatible_count(const Permutation& sigma, MomentClass cls);

// Enumerated-vs-formula compatibility counts for every sigma in S_n
// (lexicographic order); n <= 7.
std::vector<CompatibleCount> compatible_count_sweep(int n, MomentClass cls);

struct TuranCheck {
  BigInt enumerated;  // sum over permutations of the product of second moments
  BigInt reference;   // n!
};

TuranCheck turan_check(int n);

enum class WhichMoment { first, second };

struct MomentMC {
  double estimate = 0.0;  // of det (first) or |det|^2 (second), times e^{-shift}
  double stderr_ = 0.0;
  std::size_t count = 0;
  double log_shift = 0.0;
};

MomentMC moment_mc(const EnsembleSpec& spec, int n, WhichMoment which,
                   std::size_t replicates, std::uint64_t seed,
                   double log_shift = 0.0, unsigned workers = 1);

// natural log of |v| evaluated in extended precision
double log_bigint(const BigInt& v);

}  // namespace wigdet
