// Square-grid potentials on a window of the complex plane (the d=1 setting),
// their distributional Laplacian masses (dd^c u = (1/2pi) Laplacian(u) dA),
// and the mutual energy
//   E(u, v) = integral of (u - v) d(dd^c u + dd^c v)
// for potentials with logarithmic growth b*log|z| + O(1). Mass escaping the
// window is recovered from the growth slope via the discrete divergence
// theorem: exterior mass = b - boundary flux.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pluripot/util.hpp"

namespace pluripot {

/// Scalar samples on the (N x N) grid over the square |Re z - c|, |Im z - c|
/// <= half_width, row-major with the imaginary axis as the row index.
/// `slope` tags members of the logarithmic growth class: u = slope*log|z|+O(1).
class GridFunction1D {
 public:
  GridFunction1D(Complex center, double half_width, int n, std::vector<double> values,
                 std::optional<double> slope = std::nullopt,
                 std::vector<std::uint8_t> mask = {});

  static GridFunction1D sample(const std::function<double(Complex)>& f, Complex center,
                               double half_width, int n,
                               std::optional<double> slope = std::nullopt);

  Complex center() const { return center_; }
  double half_width() const { return half_width_; }
  int n() const { return n_; }
  double spacing() const { return 2.0 * half_width_ / (n_ - 1); }
  Complex node(int row, int col) const {
    const double h = spacing();
    return center_ + Complex(-half_width_ + col * h, -half_width_ + row * h);
  }
  double value(int row, int col) const { return values_[idx(row, col)]; }
  double& value(int row, int col) { return values_[idx(row, col)]; }
  const std::vector<double>& values() const { return values_; }
  bool masked_in(int row, int col) const { return mask_.empty() || mask_[idx(row, col)]; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  std::optional<double> slope() const { return slope_; }

  bool same_layout(const GridFunction1D& other) const;

  /// this + t*(other - this), slopes interpolated when both present.
  GridFunction1D interpolate_to(const GridFunction1D& other, double t) const;
  GridFunction1D shifted(double c) const;  // u + c (slope unchanged)

  /// Binary round-trip: a single JSON header line (center, half-width, N,
  /// optional slope) followed by N*N little-endian 8-byte reals.
  void save(const std::string& path) const;
  static GridFunction1D load(const std::string& path);

 private:
  size_t idx(int row, int col) const {
    return static_cast<size_t>(row) * static_cast<size_t>(n_) + static_cast<size_t>(col);
  }
  Complex center_;
  double half_width_;
  int n_;
  std::vector<double> values_;
  std::vector<std::uint8_t> mask_;
  std::optional<double> slope_;
};

/// Discrete dd^c masses. interior_total and boundary_flux agree to roundoff by
/// the telescoping divergence identity; they are computed independently as a
/// consistency check. exterior (= slope - flux) is present iff u carries a
/// growth slope, and total() adds it.
struct LaplacianMass {
  std::vector<double> cell_mass;   // per interior node, row-major over the full grid
  double interior_total = 0.0;
  double boundary_flux = 0.0;
  std::optional<double> exterior;
  double total() const { return interior_total + (exterior ? *exterior : 0.0); }
};

LaplacianMass ddc_1d(const GridFunction1D& u);

/// Mutual energy E(u, v); requires identical layouts and equal slopes when
/// both are tagged (the relative class constraint).
double energy_1d(const GridFunction1D& u, const GridFunction1D& v);

struct CocycleCheck {
  double e_uv, e_vw, e_wu;
  double cocycle_sum;  // e_uv + e_vw + e_wu, zero in exact arithmetic
};
CocycleCheck cocycle_check(const GridFunction1D& u, const GridFunction1D& v,
                           const GridFunction1D& w);

/// d/dt E(u + t(u'-u), v) at t0 versus a central difference; the analytic
/// value is (d+1) * integral of (u'-u) d(dd^c u_t) with d = 1.
struct EnergyDerivativeCheck {
  double analytic;
  double finite_difference;
  double rel_err;
};
EnergyDerivativeCheck energy_derivative_check(const GridFunction1D& u,
                                              const GridFunction1D& u_prime,
                                              const GridFunction1D& v, double t0, double h);

}  // namespace pluripot
