#include "pluripot/fekete.hpp"

#include <algorithm>
#include <cmath>

namespace pluripot {

namespace {

/// log |det M| by partial-pivot LU of the column-scaled matrix: each column is
/// divided by its max magnitude (logged), which keeps pivots O(1) even when
/// monomial columns span many orders of magnitude.
double logabsdet_scaled(Eigen::MatrixXcd m) {
  const Eigen::Index n = m.cols();
  double log_scales = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double s = m.col(j).cwiseAbs().maxCoeff();
    if (s == 0.0) return neg_inf();
    m.col(j) /= s;
    log_scales += std::log(s);
  }
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  double ld = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = std::abs(lu.matrixLU()(i, i));
    if (p == 0.0) return neg_inf();
    ld += std::log(p);
  }
  return ld + log_scales;
}

double weight_log_term(const MultiIndexBasis& basis, const std::vector<double>& q) {
  double s = 0.0;
  for (double v : q) s += v;
  return -static_cast<double>(basis.n()) * s;
}

}  // namespace

double log_abs_wvdm(const std::vector<std::vector<Complex>>& points,
                    const MultiIndexBasis& basis, const WeightSpec& w) {
  const auto dn = basis.dim();
  if (static_cast<std::int64_t>(points.size()) != dn)
    throw ValidationError("fekete.log_abs_wvdm: need exactly d_n points (d_n=" +
                          std::to_string(dn) + ", got " + std::to_string(points.size()) +
                          ")");
  Eigen::MatrixXcd m(dn, dn);
  std::vector<double> q(points.size());
  for (size_t j = 0; j < points.size(); ++j) {
    const auto vals = basis.eval(points[j]);
    for (Eigen::Index i = 0; i < dn; ++i) m(i, static_cast<Eigen::Index>(j)) = vals[i];
    q[j] = w.q_offgrid(points[j]);
    if (!std::isfinite(q[j]))
      throw ValidationError("fekete.log_abs_wvdm: non-finite weight at a point");
  }
  const double ld = logabsdet_scaled(std::move(m));
  return std::isfinite(ld) ? ld + weight_log_term(basis, q) : ld;
}

double log_abs_wvdm(const DiscreteMeasure& grid, const std::vector<size_t>& idx,
                    const MultiIndexBasis& basis, const WeightSpec& w) {
  const auto dn = basis.dim();
  if (static_cast<std::int64_t>(idx.size()) != dn)
    throw ValidationError("fekete.log_abs_wvdm: need exactly d_n grid indices");
  Eigen::MatrixXcd m(dn, dn);
  std::vector<double> q(idx.size());
  for (size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] >= grid.size())
      throw ValidationError("fekete.log_abs_wvdm: grid index out of range");
    const auto vals = basis.eval(grid.point(idx[j]));
    for (Eigen::Index i = 0; i < dn; ++i) m(i, static_cast<Eigen::Index>(j)) = vals[i];
    q[j] = w.q_at(idx[j], grid.point(idx[j]));
    if (!std::isfinite(q[j]))
      throw ValidationError("fekete.log_abs_wvdm: non-finite weight at a grid point");
  }
  const double ld = logabsdet_scaled(std::move(m));
  return std::isfinite(ld) ? ld + weight_log_term(basis, q) : ld;
}

FeketeResult fekete_search(const DiscreteMeasure& grid, const WeightSpec& w,
                           const MultiIndexBasis& basis, int max_passes) {
  const auto dn = basis.dim();
  const size_t n_grid = grid.size();
  if (n_grid < static_cast<size_t>(dn))
    throw ValidationError("fekete.search: grid has fewer than d_n points");
  if (max_passes < 0) throw ValidationError("fekete.search: max_passes must be >= 0");

  // Weighted candidate columns c_j = w(z_j)^n * phi(z_j).
  const auto q = w.q_on(grid);
  const int n = basis.n();
  Eigen::MatrixXcd cols(dn, static_cast<Eigen::Index>(n_grid));
  parallel_for(0, n_grid, [&](size_t j) {
    const auto vals = basis.eval(grid.point(j));
    const double s = std::exp(-static_cast<double>(n) * q[j]);
    for (Eigen::Index i = 0; i < dn; ++i)
      cols(i, static_cast<Eigen::Index>(j)) = s * vals[i];
  });

  // --- Greedy stage: repeatedly pick the candidate with the largest residual
  // after orthogonalizing against the already-selected columns.
  std::vector<size_t> sel;
  sel.reserve(dn);
  std::vector<char> taken(n_grid, 0);
  Eigen::MatrixXcd resid = cols;
  for (std::int64_t step = 0; step < dn; ++step) {
    double best = -1.0;
    size_t arg = n_grid;
    for (size_t j = 0; j < n_grid; ++j) {
      if (taken[j]) continue;
      const double r = resid.col(static_cast<Eigen::Index>(j)).squaredNorm();
      if (r > best) {
        best = r;
        arg = j;
      }
    }
    if (arg == n_grid || !(best > 0.0))
      throw NumericalError(
          "fekete.search: no nonsingular configuration exists on this grid "
          "(all candidates linearly dependent at step " +
          std::to_string(step) + ")");
    taken[arg] = 1;
    sel.push_back(arg);
    Eigen::VectorXcd qvec = resid.col(static_cast<Eigen::Index>(arg));
    qvec /= qvec.norm();
    // One Gram-Schmidt update against the newly selected direction.
    resid -= qvec * (qvec.adjoint() * resid);
  }
  std::sort(sel.begin(), sel.end());

  FeketeResult out;
  out.exchange_passes = 0;
  out.exchanges = 0;
  double log_w = log_abs_wvdm(grid, sel, basis, w);
  if (!std::isfinite(log_w))
    throw NumericalError("fekete.search: greedy configuration is singular");
  out.pass_log.push_back(log_w);

  // --- Exchange stage. A = M^{-1} * cols, where M holds the selected columns;
  // replacing selected slot s by candidate c multiplies |det| by |A(s,c)|.
  Eigen::MatrixXcd msel(dn, dn);
  const auto refresh = [&]() {
    for (std::int64_t s = 0; s < dn; ++s)
      msel.col(static_cast<Eigen::Index>(s)) =
          cols.col(static_cast<Eigen::Index>(sel[static_cast<size_t>(s)]));
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(msel).solve(cols).eval();
  };
  Eigen::MatrixXcd a = refresh();

  int swaps_since_refactor = 0;
  for (int pass = 0; pass < max_passes; ++pass) {
    double pass_gain = 0.0;
    for (std::int64_t s = 0; s < dn; ++s) {
      // Best replacement for slot s (strict greater => lowest index on ties).
      double best = -1.0;
      size_t arg = n_grid;
      for (size_t c = 0; c < n_grid; ++c) {
        if (taken[c]) continue;
        const double g = std::abs(a(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(c)));
        if (g > best) {
          best = g;
          arg = c;
        }
      }
      if (arg == n_grid) continue;
      const double gain = std::log(best);
      if (!(gain > 1e-12)) continue;  // no real improvement from this slot

      // Accept the swap and rank-one update A = M'^{-1} cols.
      const size_t old = sel[static_cast<size_t>(s)];
      const Complex pivot = a(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(arg));
      Eigen::VectorXcd u = a.col(static_cast<Eigen::Index>(arg));
      u(static_cast<Eigen::Index>(s)) -= Complex(1.0, 0.0);
      const Eigen::RowVectorXcd row = a.row(static_cast<Eigen::Index>(s)) / pivot;
      a.noalias() -= u * row;
      taken[old] = 0;
      taken[arg] = 1;
      sel[static_cast<size_t>(s)] = arg;
      log_w += gain;
      pass_gain += gain;
      ++out.exchanges;
      // Periodic refactorization caps rank-one update error growth.
      if (++swaps_since_refactor >= 25) {
        a = refresh();
        swaps_since_refactor = 0;
      }
    }
    ++out.exchange_passes;
    out.pass_log.push_back(log_w);
    if (!(pass_gain > 1e-12)) break;
    a = refresh();
    swaps_since_refactor = 0;
  }

  std::sort(sel.begin(), sel.end());
  out.indices = sel;
  out.points.reserve(sel.size() * static_cast<size_t>(grid.dim()));
  for (size_t j : sel) {
    const auto p = grid.point(j);
    out.points.insert(out.points.end(), p.begin(), p.end());
  }
  // Recompute exactly at the final configuration (the running value carries
  // accumulated update error).
  out.log_wvdm = log_abs_wvdm(grid, sel, basis, w);
  out.delta = std::exp(out.log_wvdm / static_cast<double>(basis.degree_sum()));
  return out;
}

MomentTable fekete_moments(const std::vector<Complex>& points, int dim, int k_max) {
  if (dim < 1) throw ValidationError("fekete.moments: dimension must be >= 1");
  if (k_max < 1) throw ValidationError("fekete.moments: k_max must be >= 1");
  if (points.empty() || points.size() % static_cast<size_t>(dim) != 0)
    throw ValidationError("fekete.moments: point array does not match dimension");
  const size_t m = points.size() / static_cast<size_t>(dim);

  MomentTable t;
  t.k_max = k_max;
  t.real_part.assign(dim, std::vector<double>(k_max, 0.0));
  t.magnitude.assign(dim, std::vector<double>(k_max, 0.0));
  for (int axis = 0; axis < dim; ++axis) {
    for (int k = 1; k <= k_max; ++k) {
      Complex s(0.0, 0.0);
      for (size_t i = 0; i < m; ++i) {
        const Complex z = points[i * static_cast<size_t>(dim) + static_cast<size_t>(axis)];
        s += std::pow(z, k);
      }
      s /= static_cast<double>(m);
      t.real_part[axis][k - 1] = s.real();
      t.magnitude[axis][k - 1] = std::abs(s);
    }
  }
  return t;
}

}  // namespace pluripot
