// Polynomial optimal measures on a grid: maximize det G over probability
// masses by the multiplicative fixed-point update
//   mass_i  <-  mass_i * B(point_i) / d_n ,
// which increases det G monotonically. The equivalence-theorem gap
//   kw_gap = max_i B(point_i) - d_n
// certifies optimality (it vanishes exactly at an optimal measure), and the
// optimal determinant is sandwiched between Fekete powers:
//   d_n^{-d_n} |W|^2  <=  det G_opt  <=  (1/d_n!) |W|^2 .
#pragma once

#include "pluripot/fekete.hpp"
#include "pluripot/gram.hpp"

namespace pluripot {

struct DesignResult {
  DiscreteMeasure measure;       // optimized probability masses on the grid
  double kw_gap = 0.0;           // max B - d_n at the final masses
  size_t kw_argmax = 0;          // grid index achieving the max
  double logdet = 0.0;           // log det G at the final masses
  int iterations = 0;
  bool converged = false;
  std::vector<double> logdet_history;  // one entry per iteration
};

DesignResult optimal_measure(const DiscreteMeasure& grid, const WeightSpec& w,
                             const MultiIndexBasis& basis, double tol = 1e-4,
                             int max_iters = 5000);

struct KwGap {
  double gap;       // max B - d_n
  size_t argmax;    // grid index of the max
  double max_b;
};
KwGap kw_gap(const DiscreteMeasure& mu, const WeightSpec& w, const MultiIndexBasis& basis);

struct SandwichReport {
  double log_wvdm;       // log |W| from the Fekete search
  double log_delta;      // log |W| / l_n
  double log_left;       // 2 log|W| - d_n log d_n
  double logdet_opt;     // log det G at the optimal measure
  double log_right;      // 2 log|W| - log(d_n!)
  double slack_left;     // logdet_opt - log_left  (>= 0 up to roundoff)
  double slack_right;    // log_right - logdet_opt (>= 0 up to roundoff)
  double design_kw_gap;
};

/// Runs the Fekete search and the optimal-measure iteration on the same grid
/// and reports both sides of the determinant sandwich in log space.
SandwichReport tfd_sandwich(const DiscreteMeasure& grid, const WeightSpec& w,
                            const MultiIndexBasis& basis, double tol = 1e-6,
                            int max_iters = 20000, int fekete_passes = 20);

}  // namespace pluripot
