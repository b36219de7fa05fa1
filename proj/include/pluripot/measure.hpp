// Discrete measures on compact subsets of C^d (grids with masses) and
// admissible weights w = e^{-Q}. Grid factories cover the classical model
// sets: unit circle / torus (Haar), intervals (uniform, Gauss-Chebyshev,
// Chebyshev-Lobatto nodes), disks and annuli (area elements), and products.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pluripot/basis.hpp"

namespace pluripot {

class DiscreteMeasure {
 public:
  DiscreteMeasure(int dim, std::vector<Complex> coords, std::vector<double> masses,
                  std::string label, bool probability);

  int dim() const { return dim_; }
  size_t size() const { return masses_.size(); }
  std::span<const Complex> point(size_t i) const {
    return {coords_.data() + i * static_cast<size_t>(dim_), static_cast<size_t>(dim_)};
  }
  const std::vector<Complex>& coords() const { return coords_; }
  const std::vector<double>& masses() const { return masses_; }
  double mass(size_t i) const { return masses_[i]; }
  double total_mass() const;
  const std::string& label() const { return label_; }
  bool is_probability() const { return probability_; }

  /// Same support, masses scaled to total 1.
  DiscreteMeasure normalized() const;

  /// Same support with replaced masses (used by design algorithms).
  DiscreteMeasure with_masses(std::vector<double> masses) const;

  /// Appends extra support points (mass 0 allowed); used for sup-set refinement.
  DiscreteMeasure appended(const std::vector<Complex>& extra_coords,
                           const std::vector<double>& extra_masses) const;

  size_t count_distinct_support() const;  // distinct points carrying mass > 0

 private:
  int dim_;
  std::vector<Complex> coords_;  // size() * dim entries, point-major
  std::vector<double> masses_;
  std::string label_;
  bool probability_;
};

/// Node placement for interval grids.
enum class IntervalRule { Uniform, Chebyshev, ChebyshevLobatto };

DiscreteMeasure grid_circle(int n_points);
DiscreteMeasure grid_interval(double a, double b, IntervalRule rule, int n_points);
DiscreteMeasure grid_torus(int dim, int n_per_factor);
DiscreteMeasure grid_disk(double radius, int n_radial, int n_angular);
DiscreteMeasure grid_annulus(double r_inner, double r_outer, int n_radial, int n_angular);
DiscreteMeasure grid_product(const DiscreteMeasure& a, const DiscreteMeasure& b);

/// Weight w = e^{-Q}. Table weights are tied to a grid by point index.
class WeightSpec {
 public:
  enum class Kind { Zero, Constant, Quadratic, Table };

  static WeightSpec zero_q();                       // w = 1
  static WeightSpec constant_q(double c);           // Q = c
  static WeightSpec quadratic_q(double c);          // Q = c |z|^2
  static WeightSpec table_q(std::vector<double> q); // Q = q[i] on grid point i

  Kind kind() const { return kind_; }
  double c() const { return c_; }
  const std::vector<double>& table() const { return table_; }

  /// Q at grid point i with coordinates z. Table kind uses the index.
  double q_at(size_t i, std::span<const Complex> z) const;

  /// Q at an off-grid point; errors for table weights.
  double q_offgrid(std::span<const Complex> z) const;

  bool depends_on_index() const { return kind_ == Kind::Table; }

  /// Q values on every point of the measure, validated finite.
  std::vector<double> q_on(const DiscreteMeasure& mu) const;

  /// Table weight Q_t = Q + t*u on the same grid.
  static WeightSpec shifted_table(const std::vector<double>& q0,
                                  const std::vector<double>& u, double t);

  std::string describe() const;

 private:
  Kind kind_ = Kind::Zero;
  double c_ = 0.0;
  std::vector<double> table_;
};

/// Basis evaluations over a measure: column j holds the monomial vector at
/// point j (dim(basis) x size(mu)). Parallel over points, deterministic.
struct BasisMatrix;
// (defined in gram.hpp where Eigen enters; measure stays Eigen-free)

/// Best (weighted) Bernstein-Markov constant on the grid:
///   M_n = max over support of sqrt(B_n(z)), with B_n the Bergman function of
/// (mu, w). Also returns the a-priori lower bound sqrt(d_n / mu(K)).
struct BernsteinMarkov {
  double m_n;
  double lower_bound;
  size_t argmax;
};
BernsteinMarkov bm_constant(const DiscreteMeasure& mu, const WeightSpec& w,
                            const MultiIndexBasis& basis);

}  // namespace pluripot
