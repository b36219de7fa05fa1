// Weighted Vandermonde determinants and discrete Fekete point search.
//   W(z_1..z_{d_n}) = det[ z_j^{J_i} ] * prod_j w(z_j)^n
// log|W| is computed in log space (column-scaled LU, pivot log-magnitudes).
// The search greedily grows a configuration by incremental orthogonalization
// (largest residual norm first) and then runs single-point exchange passes;
// both stages are deterministic with lowest-index tie breaking.
#pragma once

#include <Eigen/Dense>

#include "pluripot/measure.hpp"

namespace pluripot {

/// log |W| for explicit points (closed-form weights only). -inf if singular.
double log_abs_wvdm(const std::vector<std::vector<Complex>>& points,
                    const MultiIndexBasis& basis, const WeightSpec& w);

/// log |W| for grid members selected by index (any weight kind).
double log_abs_wvdm(const DiscreteMeasure& grid, const std::vector<size_t>& idx,
                    const MultiIndexBasis& basis, const WeightSpec& w);

struct FeketeResult {
  std::vector<size_t> indices;          // selected grid indices, ascending
  std::vector<Complex> points;          // their coordinates, point-major
  double log_wvdm = 0.0;                // log |W| at the final configuration
  double delta = 0.0;                   // |W|^{1/l_n}
  int exchange_passes = 0;              // passes actually run
  int exchanges = 0;                    // accepted single-point swaps
  std::vector<double> pass_log;         // log|W| after greedy, then each pass
};

/// Greedy + exchange maximization of |W| over d_n-subsets of the grid.
FeketeResult fekete_search(const DiscreteMeasure& grid, const WeightSpec& w,
                           const MultiIndexBasis& basis, int max_passes = 20);

/// Diagnostic moments of the counting measure on a point set: for each
/// coordinate axis, power sums s_k = (1/m) sum z_i^k for k = 1..k_max
/// (real part and magnitude).
struct MomentTable {
  int k_max;
  // [axis][k-1]
  std::vector<std::vector<double>> real_part;
  std::vector<std::vector<double>> magnitude;
};
MomentTable fekete_moments(const std::vector<Complex>& points, int dim, int k_max = 8);

}  // namespace pluripot
