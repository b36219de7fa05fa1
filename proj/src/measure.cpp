#include "pluripot/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "pluripot/gram.hpp"

namespace pluripot {

DiscreteMeasure::DiscreteMeasure(int dim, std::vector<Complex> coords,
                                 std::vector<double> masses, std::string label,
                                 bool probability)
    : dim_(dim),
      coords_(std::move(coords)),
      masses_(std::move(masses)),
      label_(std::move(label)),
      probability_(probability) {
  if (dim_ < 1) throw ValidationError("measure: dimension must be >= 1");
  if (masses_.empty()) throw ValidationError("measure: empty support");
  if (coords_.size() != masses_.size() * static_cast<size_t>(dim_))
    throw ValidationError("measure: coordinate array does not match mass count");
  bool has_positive = false;
  for (double m : masses_) {
    if (!(m >= 0.0) || !std::isfinite(m))
      throw ValidationError("measure: masses must be finite and >= 0");
    if (m > 0.0) has_positive = true;
  }
  if (!has_positive) throw ValidationError("measure: all masses are zero");
  for (const Complex& z : coords_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ValidationError("measure: non-finite support point");
}

double DiscreteMeasure::total_mass() const { return pairwise_sum(masses_); }

DiscreteMeasure DiscreteMeasure::normalized() const {
  const double t = total_mass();
  std::vector<double> m = masses_;
  for (double& v : m) v /= t;
  return DiscreteMeasure(dim_, coords_, std::move(m), label_, true);
}

DiscreteMeasure DiscreteMeasure::with_masses(std::vector<double> masses) const {
  if (masses.size() != masses_.size())
    throw ValidationError("measure.with_masses: mass count mismatch");
  return DiscreteMeasure(dim_, coords_, std::move(masses), label_, false);
}

DiscreteMeasure DiscreteMeasure::appended(const std::vector<Complex>& extra_coords,
                                          const std::vector<double>& extra_masses) const {
  if (extra_coords.size() != extra_masses.size() * static_cast<size_t>(dim_))
    throw ValidationError("measure.appended: coordinate array does not match mass count");
  auto coords = coords_;
  coords.insert(coords.end(), extra_coords.begin(), extra_coords.end());
  auto masses = masses_;
  masses.insert(masses.end(), extra_masses.begin(), extra_masses.end());
  return DiscreteMeasure(dim_, std::move(coords), std::move(masses), label_ + "+", false);
}

size_t DiscreteMeasure::count_distinct_support() const {
  std::map<std::vector<std::pair<double, double>>, int> seen;
  for (size_t i = 0; i < size(); ++i) {
    if (masses_[i] <= 0.0) continue;
    std::vector<std::pair<double, double>> key(dim_);
    const auto p = point(i);
    for (int c = 0; c < dim_; ++c) key[c] = {p[c].real(), p[c].imag()};
    seen[key] = 1;
  }
  return seen.size();
}

DiscreteMeasure grid_circle(int n_points) {
  if (n_points < 1) throw ValidationError("measure.circle: need >= 1 points");
  std::vector<Complex> coords(n_points);
  for (int k = 0; k < n_points; ++k)
    coords[k] = std::polar(1.0, 2.0 * M_PI * k / n_points);
  std::vector<double> masses(n_points, 1.0 / n_points);
  return DiscreteMeasure(1, std::move(coords), std::move(masses),
                         "circle(" + std::to_string(n_points) + ")", true);
}

DiscreteMeasure grid_interval(double a, double b, IntervalRule rule, int n_points) {
  if (!(a < b)) throw ValidationError("measure.interval: need a < b");
  if (n_points < 1) throw ValidationError("measure.interval: need >= 1 points");
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::vector<Complex> coords;
  std::vector<double> masses;
  std::string tag;
  switch (rule) {
    case IntervalRule::Uniform: {
      tag = "uniform";
      for (int k = 0; k < n_points; ++k) {
        const double x = n_points == 1 ? mid : a + (b - a) * k / (n_points - 1);
        coords.emplace_back(x, 0.0);
        masses.push_back(1.0 / n_points);
      }
      break;
    }
    case IntervalRule::Chebyshev: {
      // Gauss-Chebyshev nodes (endpoints excluded). Equal masses 1/N are the
      // arcsine-measure quadrature weights: exact for degree <= 2N-1.
      tag = "chebyshev";
      for (int k = n_points; k >= 1; --k) {
        const double x = mid + half * std::cos((2.0 * k - 1.0) * M_PI / (2.0 * n_points));
        coords.emplace_back(x, 0.0);
        masses.push_back(1.0 / n_points);
      }
      break;
    }
    case IntervalRule::ChebyshevLobatto: {
      // Endpoints included; masses 1/(2(N-1)) at the ends, 1/(N-1) inside are
      // the arcsine quadrature weights: exact for degree <= 2N-3.
      tag = "chebyshev-lobatto";
      if (n_points < 2)
        throw ValidationError("measure.interval: lobatto rule needs >= 2 points");
      for (int k = n_points - 1; k >= 0; --k) {
        const double x = mid + half * std::cos(k * M_PI / (n_points - 1));
        coords.emplace_back(x, 0.0);
        const bool end = (k == 0 || k == n_points - 1);
        masses.push_back(end ? 0.5 / (n_points - 1) : 1.0 / (n_points - 1));
      }
      break;
    }
  }
  std::ostringstream lbl;
  lbl << "interval(" << a << "," << b << ";" << tag << ";" << n_points << ")";
  return DiscreteMeasure(1, std::move(coords), std::move(masses), lbl.str(), true);
}

DiscreteMeasure grid_torus(int dim, int n_per_factor) {
  if (dim < 1 || dim > 3) throw ValidationError("measure.torus: dimension must be 1..3");
  if (n_per_factor < 1) throw ValidationError("measure.torus: need >= 1 points per factor");
  const int N = n_per_factor;
  size_t total = 1;
  for (int c = 0; c < dim; ++c) total *= static_cast<size_t>(N);
  std::vector<Complex> coords;
  coords.reserve(total * dim);
  std::vector<Complex> ring(N);
  for (int k = 0; k < N; ++k) ring[k] = std::polar(1.0, 2.0 * M_PI * k / N);
  std::vector<int> idx(dim, 0);
  for (size_t p = 0; p < total; ++p) {
    for (int c = 0; c < dim; ++c) coords.push_back(ring[idx[c]]);
    for (int c = dim - 1; c >= 0; --c) {  // odometer, last coordinate fastest
      if (++idx[c] < N) break;
      idx[c] = 0;
    }
  }
  std::vector<double> masses(total, 1.0 / static_cast<double>(total));
  return DiscreteMeasure(dim, std::move(coords), std::move(masses),
                         "torus(" + std::to_string(dim) + "," + std::to_string(N) + ")",
                         true);
}

namespace {

DiscreteMeasure radial_grid(double r_inner, double r_outer, int n_radial, int n_angular,
                            const std::string& label) {
  if (!(r_outer > r_inner) || r_inner < 0.0)
    throw ValidationError("measure.radial: need 0 <= r_inner < r_outer");
  if (n_radial < 1 || n_angular < 1)
    throw ValidationError("measure.radial: need >= 1 radial and angular points");
  std::vector<Complex> coords;
  std::vector<double> masses;
  const double dr = (r_outer - r_inner) / n_radial;
  const double dth = 2.0 * M_PI / n_angular;
  for (int i = 1; i <= n_radial; ++i) {
    const double r = r_inner + (i - 0.5) * dr;
    for (int j = 0; j < n_angular; ++j) {
      coords.push_back(std::polar(r, dth * j));
      masses.push_back(r * dr * dth);  // area element
    }
  }
  return DiscreteMeasure(1, std::move(coords), std::move(masses), label, false);
}

}  // namespace

DiscreteMeasure grid_disk(double radius, int n_radial, int n_angular) {
  std::ostringstream lbl;
  lbl << "disk(" << radius << ";" << n_radial << "x" << n_angular << ")";
  return radial_grid(0.0, radius, n_radial, n_angular, lbl.str());
}

DiscreteMeasure grid_annulus(double r_inner, double r_outer, int n_radial, int n_angular) {
  std::ostringstream lbl;
  lbl << "annulus(" << r_inner << "," << r_outer << ";" << n_radial << "x" << n_angular
      << ")";
  return radial_grid(r_inner, r_outer, n_radial, n_angular, lbl.str());
}

DiscreteMeasure grid_product(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  const int dim = a.dim() + b.dim();
  if (dim > 3) throw ValidationError("measure.product: product dimension exceeds 3");
  std::vector<Complex> coords;
  std::vector<double> masses;
  coords.reserve(a.size() * b.size() * dim);
  for (size_t i = 0; i < a.size(); ++i) {
    const auto pa = a.point(i);
    for (size_t j = 0; j < b.size(); ++j) {
      const auto pb = b.point(j);
      coords.insert(coords.end(), pa.begin(), pa.end());
      coords.insert(coords.end(), pb.begin(), pb.end());
      masses.push_back(a.mass(i) * b.mass(j));
    }
  }
  return DiscreteMeasure(dim, std::move(coords), std::move(masses),
                         a.label() + "*" + b.label(),
                         a.is_probability() && b.is_probability());
}

WeightSpec WeightSpec::zero_q() { return WeightSpec{}; }

WeightSpec WeightSpec::constant_q(double c) {
  WeightSpec w;
  w.kind_ = Kind::Constant;
  w.c_ = c;
  return w;
}

WeightSpec WeightSpec::quadratic_q(double c) {
  WeightSpec w;
  w.kind_ = Kind::Quadratic;
  w.c_ = c;
  return w;
}

WeightSpec WeightSpec::table_q(std::vector<double> q) {
  WeightSpec w;
  w.kind_ = Kind::Table;
  w.table_ = std::move(q);
  return w;
}

double WeightSpec::q_at(size_t i, std::span<const Complex> z) const {
  if (kind_ == Kind::Table) {
    if (i >= table_.size())
      throw ValidationError("weight.table: point index outside table");
    return table_[i];
  }
  return q_offgrid(z);
}

double WeightSpec::q_offgrid(std::span<const Complex> z) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return c_;
    case Kind::Quadratic: {
      double s = 0.0;
      for (const Complex& c : z) s += std::norm(c);
      return c_ * s;
    }
    case Kind::Table:
      throw ValidationError("weight.table: table weights are grid-bound; no off-grid value");
  }
  throw ValidationError("weight: unknown kind");
}

std::vector<double> WeightSpec::q_on(const DiscreteMeasure& mu) const {
  if (kind_ == Kind::Table && table_.size() != mu.size())
    throw ValidationError("weight.table: table length does not match grid size");
  std::vector<double> q(mu.size());
  for (size_t i = 0; i < mu.size(); ++i) {
    q[i] = q_at(i, mu.point(i));
    if (!std::isfinite(q[i]))
      throw ValidationError("weight: non-finite Q value on the grid");
  }
  return q;
}

WeightSpec WeightSpec::shifted_table(const std::vector<double>& q0,
                                     const std::vector<double>& u, double t) {
  if (q0.size() != u.size())
    throw ValidationError("weight.shifted_table: direction length mismatch");
  std::vector<double> q(q0.size());
  for (size_t i = 0; i < q.size(); ++i) q[i] = q0[i] + t * u[i];
  return table_q(std::move(q));
}

std::string WeightSpec::describe() const {
  switch (kind_) {
    case Kind::Zero:
      return "Q=0";
    case Kind::Constant:
      return "Q=" + format17(c_);
    case Kind::Quadratic:
      return "Q=" + format17(c_) + "|z|^2";
    case Kind::Table:
      return "Q=table(" + std::to_string(table_.size()) + ")";
  }
  return "Q=?";
}

BernsteinMarkov bm_constant(const DiscreteMeasure& mu, const WeightSpec& w,
                            const MultiIndexBasis& basis) {
  if (mu.count_distinct_support() < static_cast<size_t>(basis.dim()))
    throw NumericalError(
        "measure.bm_constant: degenerate Gram (measure supports fewer than d_n "
        "distinct points)");
  const GramSystem gs = gram_build(basis, mu, w);
  if (gs.degenerate)
    throw NumericalError("measure.bm_constant: degenerate Gram on this grid");
  const auto b = bergman_on_support(gs);
  double best = neg_inf();
  size_t arg = 0;
  for (size_t i = 0; i < b.size(); ++i) {
    if (b[i] > best) {
      best = b[i];
      arg = i;
    }
  }
  BernsteinMarkov out;
  out.m_n = std::sqrt(best);
  out.lower_bound = std::sqrt(static_cast<double>(basis.dim()) / mu.total_mass());
  out.argmax = arg;
  return out;
}

}  // namespace pluripot
