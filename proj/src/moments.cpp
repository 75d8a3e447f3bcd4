#include "wigdet/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "wigdet/dense_logdet.hpp"
#include "wigdet/parallel.hpp"

namespace wigdet {

Permutation Permutation::identity(int n) {
  Permutation p;
  p.images.resize(n);
  std::iota(p.images.begin(), p.images.end(), 0);
  return p;
}

bool Permutation::valid() const {
  std::vector<char> seen(images.size(), 0);
  for (int v : images) {
    if (v < 0 || v >= size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

namespace {

std::vector<std::vector<int>> cycles_of(const Permutation& p) {
  std::vector<std::vector<int>> cycles;
  std::vector<char> seen(p.images.size(), 0);
  for (int start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    int v = start;
    while (!seen[v]) {
      seen[v] = 1;
      cycle.push_back(v);
      v = p.images[v];
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

// rotation starting at the minimal element
std::vector<int> rotate_to_min(const std::vector<int>& cycle) {
  const auto it = std::min_element(cycle.begin(), cycle.end());
  std::vector<int> out;
  out.reserve(cycle.size());
  out.insert(out.end(), it, cycle.end());
  out.insert(out.end(), cycle.begin(), it);
  return out;
}

// Precomputed comparison data for the pair rules.
struct PairKey {
  std::uint64_t two_support = 0;                 // bitmask of 2-cycle elements
  std::vector<std::pair<int, int>> two_cycles;   // sorted
  std::vector<std::vector<int>> others;          // canonical cycles, sorted
  int fixed_points = 0;
};

PairKey make_key(const Permutation& p, MomentClass cls) {
  if (p.size() > 63) throw SizeError("pair rules support n <= 63");
  PairKey key;
  for (auto& cycle : cycles_of(p)) {
    if (cycle.size() == 2) {
      const auto [lo, hi] = std::minmax(cycle[0], cycle[1]);
      key.two_cycles.emplace_back(lo, hi);
      key.two_support |= (1ull << lo) | (1ull << hi);
      continue;
    }
    if (cycle.size() == 1) ++key.fixed_points;
    std::vector<int> canon = rotate_to_min(cycle);
    if (cls == MomentClass::goe && cycle.size() >= 3) {
      // reversal counts as the same cycle for GOE
      std::vector<int> rev(cycle.rbegin(), cycle.rend());
      rev = rotate_to_min(rev);
      if (rev < canon) canon = std::move(rev);
    }
    key.others.push_back(std::move(canon));
  }
  std::sort(key.two_cycles.begin(), key.two_cycles.end());
  std::sort(key.others.begin(), key.others.end());
  return key;
}

int common_two_cycles(const PairKey& a, const PairKey& b) {
  int c = 0;
  std::size_t i = 0, j = 0;
  while (i < a.two_cycles.size() && j < b.two_cycles.size()) {
    if (a.two_cycles[i] == b.two_cycles[j]) {
      ++c;
      ++i;
      ++j;
    } else if (a.two_cycles[i] < b.two_cycles[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return c;
}

BigInt pair_value(const PairKey& sk, const PairKey& rk, MomentClass cls) {
  if (sk.two_support != rk.two_support) return 0;
  if (sk.others != rk.others) return 0;
  const int c = common_two_cycles(sk, rk);
  if (cls == MomentClass::gue) return BigInt(1) << c;
  // GOE: 3 per common 2-cycle, 2 per fixed point (variance-2 diagonal)
  BigInt value = 1;
  for (int i = 0; i < c; ++i) value *= 3;
  return value << sk.fixed_points;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> perms;
  Permutation p = Permutation::identity(n);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.images.begin(), p.images.end()));
  return perms;
}

}  // namespace

CycleType cycle_type(const Permutation& p) {
  if (!p.valid()) throw UsageError("not a permutation");
  CycleType type;
  type.counts.assign(p.size(), 0);
  for (const auto& cycle : cycles_of(p)) ++type.counts[cycle.size() - 1];
  return type;
}

MomentClass moment_class_from_name(const std::string& name) {
  if (name == "goe") return MomentClass::goe;
  if (name == "gue") return MomentClass::gue;
  throw CatalogError("unknown moment class: " + name);
}

BigInt pair_expectation(const Permutation& sigma, const Permutation& rho,
                        MomentClass cls) {
  if (sigma.size() != rho.size())
    throw ShapeError("pair expectation needs permutations of equal size");
  if (!sigma.valid() || !rho.valid()) throw UsageError("not a permutation");
  return pair_value(make_key(sigma, cls), make_key(rho, cls), cls);
}

BigInt factorial_exact(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

BigInt binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt v = 1;
  for (int i = 0; i < k; ++i) {
    v *= (n - i);
    v /= (i + 1);
  }
  return v;
}

BigInt perfect_matching_count(int n) {
  if (n < 0) throw UsageError("matching count needs n >= 0");
  if (n % 2 != 0) return 0;
  return factorial_exact(n) / (factorial_exact(n / 2) * (BigInt(1) << (n / 2)));
}

BigInt first_moment_exact(int n) {
  if (n % 2 != 0) return 0;
  const BigInt count = perfect_matching_count(n);
  return (n / 2) % 2 == 0 ? count : -count;
}

BigInt first_moment_enumerated(int n) {
  if (n > 10) throw SizeError("first-moment enumeration supports n <= 10");
  BigInt total = 0;
  Permutation p = Permutation::identity(n);
  do {
    // E I_sigma is nonzero only for pure products of 2-cycles; then every
    // transposition contributes the unit off-diagonal variance, so the term
    // reduces to sgn(sigma).
    bool matching = true;
    int transpositions = 0;
    for (int i = 0; i < n && matching; ++i) {
      const int j = p.images[i];
      if (j == i || p.images[j] != i) matching = false;
      if (j > i) ++transpositions;
    }
    if (matching && 2 * transpositions == n)
      total += (transpositions % 2 == 0) ? 1 : -1;
  } while (std::next_permutation(p.images.begin(), p.images.end()));
  return total;
}

ExactMoment second_moment_bruteforce(int n, MomentClass cls) {
  if (n < 1) throw UsageError("second moment needs n >= 1");
  if (n > 7) throw SizeError("pair enumeration supports n <= 7");
  const auto perms = all_permutations(n);
  std::vector<PairKey> keys;
  keys.reserve(perms.size());
  for (const auto& p : perms) keys.push_back(make_key(p, cls));
  BigInt total = 0;
  for (const auto& sk : keys)
    for (const auto& rk : keys) total += pair_value(sk, rk, cls);
  return {total, n, 2, cls};
}

namespace {

BigInt compatible_formula(const Permutation& sigma, MomentClass cls) {
  const CycleType type = cycle_type(sigma);
  const int c2 = type.count(2);
  BigInt formula =
      factorial_exact(2 * c2) / (factorial_exact(c2) * (BigInt(1) << c2));
  if (cls == MomentClass::goe)
    for (int k = 3; k <= sigma.size(); ++k) formula <<= type.count(k);
  return formula;
}

}  // namespace

CompatibleCount compatible_count(const Permutation& sigma, MomentClass cls) {
  const int n = sigma.size();
  if (n > 8) throw SizeError("compatibility enumeration supports n <= 8");
  const PairKey sk = make_key(sigma, cls);
  CompatibleCount out;
  out.enumerated = 0;
  Permutation rho = Permutation::identity(n);
  do {
    if (pair_value(sk, make_key(rho, cls), cls) != 0) ++out.enumerated;
  } while (std::next_permutation(rho.images.begin(), rho.images.end()));
  out.formula = compatible_formula(sigma, cls);
  return out;
}

std::vector<CompatibleCount> compatible_count_sweep(int n, MomentClass cls) {
  if (n > 7) throw SizeError("compatibility sweep supports n <= 7");
  const auto perms = all_permutations(n);
  std::vector<PairKey> keys;
  keys.reserve(perms.size());
  for (const auto& p : perms) keys.push_back(make_key(p, cls));
  std::vector<CompatibleCount> out(perms.size());
  for (std::size_t s = 0; s < perms.size(); ++s) {
    BigInt count = 0;
    for (const auto& rk : keys)
      if (pair_value(keys[s], rk, cls) != 0) ++count;
    out[s] = {count, compatible_formula(perms[s], cls)};
  }
  return out;
}

TuranCheck turan_check(int n) {
  if (n < 1) throw UsageError("turan check needs n >= 1");
  if (n > 8) throw SizeError("turan enumeration supports n <= 8");
  TuranCheck out;
  out.enumerated = 0;
  out.reference = factorial_exact(n);
  Permutation p = Permutation::identity(n);
  do {
    // iid model: E prod_i zeta_{i sigma(i)}^2 factors into unit second
    // moments, so each permutation contributes exactly 1
    out.enumerated += 1;
  } while (std::next_permutation(p.images.begin(), p.images.end()));
  return out;
}

MomentMC moment_mc(const EnsembleSpec& spec, int n, WhichMoment which,
                   std::size_t replicates, std::uint64_t seed,
                   double log_shift, unsigned workers) {
  if (replicates < 2) throw UsageError("moment_mc needs at least 2 replicates");
  if (which == WhichMoment::first &&
      spec.family == EnsembleFamily::iid_square && !spec.offdiag.is_real())
    throw UsageError("first moment Monte Carlo needs a real determinant");

  std::vector<double> values(replicates);
  for_each_replicate(replicates, workers, [&](std::size_t r) {
    const Eigen::MatrixXcd m = sample_matrix(spec, n, rng::derive_seed(seed, r));
    LogDetResult det;
    if (which == WhichMoment::second) {
      // |det| only: LU is enough and much cheaper than the spectral path
      det = spec.offdiag.is_real()
                ? logdet_real_lu(m.real())
                : LogDetResult{logdet_abs_lu(m), 1, LogDetMethod::lu};
    } else if (spec.family == EnsembleFamily::wigner_hermitian) {
      det = logdet_hermitian(m);
    } else if (spec.offdiag.is_real()) {
      det = logdet_real_lu(m.real());
    } else {
      det = {logdet_abs_lu(m), 1, LogDetMethod::lu};
    }
    if (det.log_abs == -std::numeric_limits<double>::infinity()) {
      values[r] = 0.0;
    } else if (which == WhichMoment::first) {
      values[r] = det.sign * std::exp(det.log_abs - log_shift);
    } else {
      values[r] = std::exp(2.0 * det.log_abs - log_shift);
    }
  });

  MomentMC out;
  out.count = replicates;
  out.log_shift = log_shift;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.estimate = sum / static_cast<double>(replicates);
  double sq = 0.0;
  for (double v : values) sq += (v - out.estimate) * (v - out.estimate);
  out.stderr_ = std::sqrt(sq / (replicates - 1.0) / replicates);
  return out;
}

double log_bigint(const BigInt& v) {
  using Float = boost::multiprecision::cpp_bin_float_100;
  if (v == 0) throw UsageError("log of zero");
  return static_cast<double>(log(Float(abs(v))));
}

}  // namespace wigdet
