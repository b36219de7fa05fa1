#include "pluripot/experiments.hpp"

#include <cmath>

namespace pluripot {

namespace {

double scaled_logdet_difference(const ConvexBody& body, int n, double logdet_prime,
                                double logdet_base, std::int64_t d_n) {
  const int d = body.dim();
  const double nd = monge_ampere_mass(body).to_double();
  return -((d + 1) * nd / (2.0 * n * static_cast<double>(d_n))) *
         (logdet_prime - logdet_base);
}

}  // namespace

double interval_vs_torus_energy(int n, double extent, bool richardson) {
  const auto make = [&](int nn) {
    const auto green = GridFunction1D::sample(
        [](Complex z) {
          const Complex w = z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
          return std::max(0.0, std::log(std::abs(w)));
        },
        Complex(0.0, 0.0), extent, nn, 1.0);
    const auto logplus = GridFunction1D::sample(
        [](Complex z) { return std::max(0.0, std::log(std::abs(z))); },
        Complex(0.0, 0.0), extent, nn, 1.0);
    return energy_1d(green, logplus);
  };
  const double e = make(n);
  if (!richardson) return e;
  // First-order Richardson against the half-resolution grid.
  const double e_half = make(n / 2 + (n / 2) % 2);  // keep parity reasonable
  return 2.0 * e - e_half;
}

double interval_vs_torus_l_n(int n) {
  auto body = std::make_shared<const ConvexBody>(ConvexBody::interval(0, 1));
  const MultiIndexBasis basis(body, n);
  const auto w = WeightSpec::zero_q();

  const auto arcs = grid_interval(-1.0, 1.0, IntervalRule::Chebyshev, 2 * n + 1);
  const GramSystem g_int = gram_build(basis, arcs, w);
  const auto circ = grid_circle(2 * n + 1);
  const GramSystem g_tor = gram_build(basis, circ, w);
  if (g_int.degenerate || g_tor.degenerate)
    throw NumericalError("experiments.interval_vs_torus: degenerate Gram");
  return scaled_logdet_difference(*body, n, g_int.logdet, g_tor.logdet, basis.dim());
}

std::vector<EnergyRow> energy_experiment(const EnergyExperimentConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
    throw ValidationError("experiments.energy: need 1 <= n_min <= n_max");
  std::vector<EnergyRow> rows;

  if (cfg.kind == "torus-constant") {
    if (!cfg.body) throw ValidationError("experiments.energy: torus-constant needs a body");
    const ConvexBody& body = *cfg.body;
    const int d = body.dim();
    const double target = (d + 1) * monge_ampere_mass(body).to_double() * cfg.c;
    const auto a_incl = simplex_inclusion(body).A;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
      const MultiIndexBasis basis(cfg.body, n);
      // Exponent differences stay below A*n + 1 per coordinate, so this grid
      // makes the monomials exactly orthonormal and the Gram nondegenerate.
      const int per_factor = static_cast<int>(a_incl) * n + 1;
      const auto grid = grid_torus(d, per_factor);
      const GramSystem g0 = gram_build(basis, grid, WeightSpec::zero_q());
      const GramSystem gc = gram_build(basis, grid, WeightSpec::constant_q(cfg.c));
      if (g0.degenerate || gc.degenerate)
        throw NumericalError("experiments.energy: degenerate torus Gram");
      EnergyRow row;
      row.n = n;
      row.l_n = scaled_logdet_difference(body, n, gc.logdet, g0.logdet, basis.dim());
      row.target = target;
      row.gap = std::abs(row.l_n - row.target);
      rows.push_back(row);
    }
    return rows;
  }

  if (cfg.kind == "interval-vs-torus") {
    const double target =
        interval_vs_torus_energy(cfg.energy_n, cfg.energy_extent, cfg.richardson);
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
      EnergyRow row;
      row.n = n;
      row.l_n = interval_vs_torus_l_n(n);
      row.target = target;
      row.gap = std::abs(row.l_n - row.target);
      rows.push_back(row);
    }
    return rows;
  }

  if (cfg.kind == "self") {
    // Identical weights on both sides: the difference is exactly zero at
    // every n, matching E(u, u) = 0.
    auto body = cfg.body;
    if (!body) body = std::make_shared<const ConvexBody>(ConvexBody::interval(0, 1));
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
      const MultiIndexBasis basis(body, n);
      const auto grid = body->dim() == 1
                            ? grid_circle(2 * n + 1)
                            : grid_torus(body->dim(), 2 * n + 1);
      const GramSystem g = gram_build(basis, grid, WeightSpec::zero_q());
      if (g.degenerate) throw NumericalError("experiments.energy: degenerate Gram");
      EnergyRow row;
      row.n = n;
      row.l_n = scaled_logdet_difference(*body, n, g.logdet, g.logdet, basis.dim());
      row.target = 0.0;
      row.gap = std::abs(row.l_n);
      rows.push_back(row);
    }
    return rows;
  }

  throw ValidationError("experiments.energy: unknown kind '" + cfg.kind +
                        "' (expected torus-constant | interval-vs-torus | self)");
}

std::vector<DimRow> dims_table(const ConvexBody& body, int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min)
    throw ValidationError("experiments.dims: need 1 <= n_min <= n_max");
  std::vector<DimRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    const DimInfo info = dims(body, n);
    rows.push_back({n, info.dim, info.degree_sum, info.f_ratio});
  }
  return rows;
}

std::vector<TfdRow> tfd_sweep(const DiscreteMeasure& grid, const WeightSpec& w,
                              std::shared_ptr<const ConvexBody> body, int n_min, int n_max,
                              int max_passes) {
  if (n_min < 1 || n_max < n_min)
    throw ValidationError("experiments.tfd: need 1 <= n_min <= n_max");
  std::vector<TfdRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    const MultiIndexBasis basis(body, n);
    const FeketeResult fek = fekete_search(grid, w, basis, max_passes);
    rows.push_back({n, basis.dim(), basis.degree_sum(), fek.log_wvdm, fek.delta});
  }
  return rows;
}

}  // namespace pluripot
