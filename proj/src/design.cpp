#include "pluripot/design.hpp"

#include <cmath>

namespace pluripot {

namespace {

constexpr double kPruneMass = 1e-15;
constexpr double kMonotoneSlack = 1e-12;

}  // namespace

DesignResult optimal_measure(const DiscreteMeasure& grid, const WeightSpec& w,
                             const MultiIndexBasis& basis, double tol, int max_iters) {
  if (!(tol > 0.0)) throw ValidationError("design.optimal_measure: tol must be positive");
  if (max_iters < 1)
    throw ValidationError("design.optimal_measure: max_iters must be >= 1");
  const auto dn = static_cast<double>(basis.dim());
  if (grid.size() < static_cast<size_t>(basis.dim()))
    throw ValidationError(
        "design.optimal_measure: degenerate start (grid has fewer than d_n points)");

  std::vector<double> mass(grid.size(), 1.0 / static_cast<double>(grid.size()));
  DiscreteMeasure mu = grid.with_masses(mass);

  DesignResult out{mu, 0.0, 0, neg_inf(), 0, false, {}};
  double prev_logdet = neg_inf();

  for (int it = 0; it < max_iters; ++it) {
    mu = grid.with_masses(mass);
    const GramSystem gs = gram_build(basis, mu, w);
    if (gs.degenerate) {
      if (it == 0)
        throw NumericalError(
            "design.optimal_measure: degenerate start (initial Gram is singular)");
      throw NumericalError("design.optimal_measure: Gram became singular while iterating");
    }
    // The update never decreases det G; anything beyond roundoff slack means
    // the linear algebra has broken down.
    if (std::isfinite(prev_logdet) &&
        gs.logdet < prev_logdet - kMonotoneSlack * std::max(1.0, std::abs(prev_logdet)))
      throw NumericalError(
          "design.optimal_measure: determinant decreased beyond roundoff slack");
    prev_logdet = gs.logdet;
    out.logdet_history.push_back(gs.logdet);

    const auto b = bergman_on_support(gs);
    double max_b = neg_inf();
    size_t arg = 0;
    for (size_t i = 0; i < b.size(); ++i) {
      if (b[i] > max_b) {
        max_b = b[i];
        arg = i;
      }
    }
    out.kw_gap = max_b - dn;
    out.kw_argmax = arg;
    out.logdet = gs.logdet;
    out.iterations = it + 1;
    if (out.kw_gap <= tol * dn) {
      out.converged = true;
      break;
    }

    for (size_t i = 0; i < mass.size(); ++i) mass[i] *= b[i] / dn;
    // Mass drift stays at roundoff level; renormalize periodically.
    if ((it + 1) % 100 == 0) {
      const double total = pairwise_sum(mass);
      if (std::abs(total - 1.0) > 1e-9)
        throw NumericalError("design.optimal_measure: mass drift exceeded 1e-9");
      for (double& m : mass) m /= total;
    }
  }

  // Prune numerically-zero masses and renormalize once.
  for (double& m : mass) {
    if (m < kPruneMass) m = 0.0;
  }
  const double total = pairwise_sum(mass);
  for (double& m : mass) m /= total;
  out.measure = DiscreteMeasure(grid.dim(), grid.coords(), std::move(mass),
                                grid.label() + ":optimal", true);
  return out;
}

KwGap kw_gap(const DiscreteMeasure& mu, const WeightSpec& w, const MultiIndexBasis& basis) {
  const GramSystem gs = gram_build(basis, mu, w);
  if (gs.degenerate) throw NumericalError("design.kw_gap: degenerate Gram system");
  const auto b = bergman_on_support(gs);
  KwGap out{neg_inf(), 0, neg_inf()};
  for (size_t i = 0; i < b.size(); ++i) {
    if (b[i] > out.max_b) {
      out.max_b = b[i];
      out.argmax = i;
    }
  }
  out.gap = out.max_b - static_cast<double>(basis.dim());
  return out;
}

SandwichReport tfd_sandwich(const DiscreteMeasure& grid, const WeightSpec& w,
                            const MultiIndexBasis& basis, double tol, int max_iters,
                            int fekete_passes) {
  const FeketeResult fek = fekete_search(grid, w, basis, fekete_passes);
  const DesignResult opt = optimal_measure(grid, w, basis, tol, max_iters);
  const double dn = static_cast<double>(basis.dim());
  SandwichReport r;
  r.log_wvdm = fek.log_wvdm;
  r.log_delta = fek.log_wvdm / static_cast<double>(basis.degree_sum());
  r.log_left = 2.0 * fek.log_wvdm - dn * std::log(dn);
  r.logdet_opt = opt.logdet;
  r.log_right = 2.0 * fek.log_wvdm - std::lgamma(dn + 1.0);
  r.slack_left = r.logdet_opt - r.log_left;
  r.slack_right = r.log_right - r.logdet_opt;
  r.design_kw_gap = opt.kw_gap;
  return r;
}

}  // namespace pluripot
