// Shared small utilities: error types, deterministic summation/RNG, thread pool helpers.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pluripot {

using Complex = std::complex<double>;

/// Bad input: wrong shapes, malformed bodies, inconsistent grids. CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerically meaningless result: singular systems, non-finite values. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline double neg_inf() { return -std::numeric_limits<double>::infinity(); }

/// Pairwise (cascade) summation; error grows like O(log n * eps) and the result
/// does not depend on thread count since it is always evaluated sequentially
/// over a fixed recursion tree.
inline double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& x) {
  return pairwise_sum(std::span<const double>(x.data(), x.size()));
}

/// Deterministic RNG with explicit output mapping. std::mt19937_64 is pinned by
/// the standard, but the distributions are not; we map raw draws ourselves so
/// seeded runs are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {
    // splitmix64 warm-up so that small seeds do not produce correlated streams
    for (int i = 0; i < 4; ++i) next_u64();
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [a,b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Index in [0, n).
  size_t index(size_t n) { return static_cast<size_t>(next_u64() % n); }

  /// Standard normal via Box-Muller (explicit formulas, reproducible).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do { u1 = uniform(); } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) * M_SQRT1_2;
  }

  /// Sample an index from a discrete distribution by inverse CDF over `cdf`,
  /// which must be nondecreasing with cdf.back() ~ 1.
  size_t sample_cdf(std::span<const double> cdf) {
    const double u = uniform();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    return it == cdf.end() ? cdf.size() - 1 : static_cast<size_t>(it - cdf.begin());
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Global worker count used by the parallel helpers. Defaults to
/// PLURIPOT_THREADS if set, else 1. All parallel loops write disjoint slots or
/// merge per-block results in index order, so results are identical for any
/// thread count.
int thread_count();
void set_thread_count(int n);

/// Runs fn(i) for i in [begin, end) across thread_count() workers in fixed
/// contiguous blocks. fn must only write state owned by index i.
void parallel_for(size_t begin, size_t end, const std::function<void(size_t)>& fn);

/// Deterministic parallel argmax of score(i) over [0, n): strict-greater
/// comparison with ascending index scan per block and index-ordered block
/// merge, so the lowest index wins ties regardless of thread count.
size_t parallel_argmax(size_t n, const std::function<double(size_t)>& score,
                       double* best_value = nullptr);

/// Shortest round-trip decimal representation (17 significant digits).
inline std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline bool approx_eq(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline double log1p_exp(double x) {  // log(1 + e^x), overflow-safe
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

}  // namespace pluripot
