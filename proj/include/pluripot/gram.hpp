// Weighted Gram matrices G = [ <z^I, z^J> ] in L^2(w^{2n} mu), their
// log-determinants, and the Bergman (Christoffel reciprocal) function
//   B_n(z) = w(z)^{2n} P(z)^* G^{-1} P(z).
//
// The log-determinant is obtained from a Householder QR of the weighted
// square-root factor F (G = F^* F), which halves the condition exponent
// relative to factoring the assembled Gram; the stored Cholesky factor is the
// (phase-fixed) R^*, so G = chol chol^* holds and Bergman evaluation is one
// triangular solve (G^{-1} is never formed).
#pragma once

#include <Eigen/Dense>

#include "pluripot/measure.hpp"

namespace pluripot {

/// Monomial evaluations over the support: column j = basis vector at point j.
Eigen::MatrixXcd basis_matrix(const MultiIndexBasis& basis, const DiscreteMeasure& mu);

struct GramSystem {
  MultiIndexBasis basis;
  DiscreteMeasure measure;
  WeightSpec weight;
  Eigen::MatrixXcd gram;   // d_n x d_n, Hermitian
  Eigen::MatrixXcd chol;   // lower-triangular, gram = chol * chol^*
  double logdet = 0.0;     // log det(gram), -inf when degenerate
  bool degenerate = false;
  std::int64_t dim = 0;        // d_n
  std::int64_t degree_sum = 0; // l_n
};

GramSystem gram_build(const MultiIndexBasis& basis, const DiscreteMeasure& mu,
                      const WeightSpec& w);

/// logdet(G) / (2 l_n); errors if degenerate.
double logdet_scaled(const GramSystem& gs);

/// Bergman function at z (off-grid closed-form weights only when
/// include_weight). include_weight multiplies by w(z)^{2n}.
double bergman_eval(const GramSystem& gs, std::span<const Complex> z,
                    bool include_weight = true);

/// log B_n(z), overflow-safe via the log-magnitude basis form.
double bergman_log_eval(const GramSystem& gs, std::span<const Complex> z,
                        bool include_weight = true);

/// B_n at every support point (weights included), one triangular solve total.
std::vector<double> bergman_on_support(const GramSystem& gs);

/// Derivative of f(t) = -(1/2 l_n) logdet G(w e^{-t u}) at t0 against a
/// central finite difference:  analytic = (n/l_n) * sum_i mass_i u_i B(point_i).
struct DerivativeCheck {
  double analytic;
  double finite_difference;
  double rel_err;
};
DerivativeCheck f_derivative_check(const MultiIndexBasis& basis, const DiscreteMeasure& mu,
                                   const WeightSpec& w, const std::vector<double>& u,
                                   double t0, double h);

/// f(t) on a uniform t-grid plus its second differences (concavity certificate:
/// all second differences <= tolerance).
struct ConcavityScan {
  std::vector<double> t;
  std::vector<double> f;
  std::vector<double> second_difference;
};
ConcavityScan concavity_scan(const MultiIndexBasis& basis, const DiscreteMeasure& mu,
                             const WeightSpec& w, const std::vector<double>& u,
                             double t_min, double t_max, int n_t);

/// Monte-Carlo crosscheck of Z_n = integral of |VDM|^2 w^{2n} d mu^{d_n}
/// against d_n! det G. Requires a probability measure and d_n <= 4.
struct ZnCrosscheck {
  double mc_mean;
  double mc_std_err;
  double from_det;   // d_n! * det G
  double rel_err;
  std::uint64_t trials;
};
ZnCrosscheck zn_crosscheck(const MultiIndexBasis& basis, const DiscreteMeasure& mu,
                           const WeightSpec& w, std::uint64_t trials, std::uint64_t seed);

}  // namespace pluripot
