// Monomial bases of the polynomial spaces attached to a convex body: the
// space spanned by z^J for J in (nP intersect Z^d), its dimension/degree-sum
// statistics, and numerically robust evaluation (plain and log-magnitude).
#pragma once

#include <memory>

#include "pluripot/geometry.hpp"

namespace pluripot {

struct DimInfo {
  std::int64_t dim = 0;        // d_n = #(nP cap Z^d)
  std::int64_t degree_sum = 0; // l_n = sum of |J|
  Rational f_ratio;            // f_n = (l_n/d_n) / (n d/(d+1))
  Rational ma_mass;            // n_d = d! Vol(P)
};

/// Basis {z^J : J in nP}, frozen in graded order (see graded_before).
class MultiIndexBasis {
 public:
  MultiIndexBasis(std::shared_ptr<const ConvexBody> body, int n);

  /// Same space with an explicit exponent list (membership-checked but order
  /// preserved); determinant/Bergman quantities are order-invariant and tests
  /// exercise exactly that.
  static MultiIndexBasis with_exponents(std::shared_ptr<const ConvexBody> body, int n,
                                        std::vector<MultiIndex> exponents);

  const ConvexBody& body() const { return *body_; }
  std::shared_ptr<const ConvexBody> body_ptr() const { return body_; }
  int n() const { return n_; }
  std::int64_t dim() const { return static_cast<std::int64_t>(exponents_.size()); }
  std::int64_t degree_sum() const { return degree_sum_; }
  const std::vector<MultiIndex>& exponents() const { return exponents_; }

  /// Plain evaluation of all basis monomials at z; errors on non-finite output
  /// (use the log form for large |z| or high degree).
  std::vector<Complex> eval(std::span<const Complex> z) const;

  /// Log-magnitude form: per monomial, (log|z^J|, unit phase). The magnitude is
  /// -inf when a zero coordinate carries a positive exponent; phase then 1.
  struct LogEntry {
    double log_abs;
    Complex phase;
  };
  std::vector<LogEntry> eval_log(std::span<const Complex> z) const;

 private:
  MultiIndexBasis() = default;
  std::shared_ptr<const ConvexBody> body_;
  int n_ = 0;
  std::vector<MultiIndex> exponents_;
  std::int64_t degree_sum_ = 0;
};

/// d_n, l_n, f_n, n_d for the body at degree parameter n.
DimInfo dims(const ConvexBody& body, int n);

/// Limit of f_n: ((d+1)/d) * C_P / Vol(P), exact.
Rational a_limit(const ConvexBody& body);

}  // namespace pluripot
