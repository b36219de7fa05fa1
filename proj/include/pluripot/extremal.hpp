// Closed-form weighted extremal functions for the classical model pairs, the
// Bergman-kernel approximation V_n = (1/2n) log(P^* G^{-1} P) that converges
// to them, and a randomized check of the defining domination property
//   |p_n(z)| <= ||w^n p_n||_K * exp(n * V(z)).
#pragma once

#include "pluripot/gram.hpp"
#include "pluripot/grid1d.hpp"

namespace pluripot {

/// Model (K, Q, P) triples with known extremal functions.
enum class ExtremalCase {
  TorusIndicator,       // K = T^d, w = 1: V* = H_P (needs a body)
  TorusIndicatorPlusC,  // K = T^d, Q = c constant: V* = H_P + c
  IntervalGreen,        // K = [-1,1], w = 1, P = [0,1]: V* = log|z + sqrt(z^2-1)|
  DiskLogPlus,          // K = closed unit disk, w = 1, P = [0,1]: V* = max(0, log|z|)
};

/// V* at z for the given case; `body` is required for the torus cases and `c`
/// only enters TorusIndicatorPlusC.
double closed_form_extremal(ExtremalCase which, std::span<const Complex> z,
                            const ConvexBody* body = nullptr, double c = 0.0);

/// Growth slope of V* along |z| -> inf on the diagonal torus direction
/// (= sum of the maximizing vertex for TorusIndicator; 1 for the d=1 cases).
double extremal_slope(ExtremalCase which, const ConvexBody* body = nullptr);

/// (1/2n) log( P(z)^* G^{-1} P(z) ), the unweighted Bergman approximation of
/// the extremal function of (K, w) from the Gram system's measure.
double extremal_bergman_approx(const GramSystem& gs, std::span<const Complex> z);

/// Samples random polynomials p in the basis span, normalizes to grid sup-norm
/// ||w^n p||_K = 1, and tests |p(z)| <= (1 + 1e-6) exp(n V*(z)) at seeded
/// off-K points (drawn with a standoff from K so the finite-grid sup-norm
/// cannot manufacture spurious violations).
struct DominationReport {
  int n_polynomials;
  int n_test_points;
  int violations;
  double max_excess;  // max over samples of log|p| - n V* - log(1+1e-6)
};
DominationReport domination_check(const GramSystem& gs, ExtremalCase oracle,
                                  int n_polynomials, int n_test_points,
                                  std::uint64_t seed);

}  // namespace pluripot
