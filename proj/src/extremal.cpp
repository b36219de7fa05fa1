#include "pluripot/extremal.hpp"

#include <cmath>

namespace pluripot {

namespace {

/// log |z + sqrt(z^2 - 1)| with the exterior branch: the factored form
/// sqrt(z-1)*sqrt(z+1) under principal square roots lands on the root of
/// modulus >= 1, so the value is >= 0 and -> log|z| + log 2 at infinity.
double interval_green(Complex z) {
  const Complex w = z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
  return std::max(0.0, std::log(std::abs(w)));
}

}  // namespace

double closed_form_extremal(ExtremalCase which, std::span<const Complex> z,
                            const ConvexBody* body, double c) {
  switch (which) {
    case ExtremalCase::TorusIndicator: {
      if (!body)
        throw ValidationError("extremal.closed_form: torus indicator needs a body");
      return h_p_eval(*body, z);
    }
    case ExtremalCase::TorusIndicatorPlusC: {
      if (!body)
        throw ValidationError("extremal.closed_form: torus indicator needs a body");
      return h_p_eval(*body, z) + c;
    }
    case ExtremalCase::IntervalGreen: {
      if (z.size() != 1)
        throw ValidationError("extremal.closed_form: interval case is 1-dimensional");
      return interval_green(z[0]);
    }
    case ExtremalCase::DiskLogPlus: {
      if (z.size() != 1)
        throw ValidationError("extremal.closed_form: disk case is 1-dimensional");
      return std::max(0.0, std::log(std::abs(z[0])));
    }
  }
  throw ValidationError("extremal.closed_form: unknown case");
}

double extremal_slope(ExtremalCase which, const ConvexBody* body) {
  switch (which) {
    case ExtremalCase::TorusIndicator:
    case ExtremalCase::TorusIndicatorPlusC: {
      if (!body)
        throw ValidationError("extremal.slope: torus indicator needs a body");
      // Along |z_i| = r -> inf the maximizing vertex is the one of largest
      // coordinate sum.
      Rational best = 0;
      for (const auto& v : body->vertices()) {
        Rational s = 0;
        for (const auto& c : v) s += c;
        best = std::max(best, s);
      }
      return best.to_double();
    }
    case ExtremalCase::IntervalGreen:
    case ExtremalCase::DiskLogPlus:
      return 1.0;
  }
  throw ValidationError("extremal.slope: unknown case");
}

double extremal_bergman_approx(const GramSystem& gs, std::span<const Complex> z) {
  const double logb = bergman_log_eval(gs, z, /*include_weight=*/false);
  return logb / (2.0 * static_cast<double>(gs.basis.n()));
}

namespace {

/// Seeded off-K sample for each oracle (per-coordinate for the torus cases).
/// The standoff keeps the test away from the region where finite-grid
/// sup-norms are not trustworthy to 1e-6.
std::vector<Complex> sample_off_k(ExtremalCase oracle, int dim, Rng& rng) {
  const auto annulus_point = [&rng]() {
    // Annulus 1.1 <= |z| <= 3 (area-uniform radius).
    const double r = std::sqrt(rng.uniform(1.1 * 1.1, 9.0));
    return std::polar(r, rng.uniform(0.0, 2.0 * M_PI));
  };
  switch (oracle) {
    case ExtremalCase::TorusIndicator:
    case ExtremalCase::TorusIndicatorPlusC: {
      std::vector<Complex> z(dim);
      for (auto& c : z) c = annulus_point();
      return z;
    }
    case ExtremalCase::DiskLogPlus:
      return {annulus_point()};
    case ExtremalCase::IntervalGreen: {
      // Rectangle [-2,2] x [-1.5,1.5], at distance >= 0.2 from [-1,1].
      for (int tries = 0; tries < 10000; ++tries) {
        const Complex z(rng.uniform(-2.0, 2.0), rng.uniform(-1.5, 1.5));
        const double dx = std::max({-1.0 - z.real(), z.real() - 1.0, 0.0});
        const double dist = std::hypot(dx, z.imag());
        if (dist >= 0.2) return {z};
      }
      throw NumericalError("extremal.domination: off-K sampler failed");
    }
  }
  throw ValidationError("extremal.domination: unknown case");
}

}  // namespace

DominationReport domination_check(const GramSystem& gs, ExtremalCase oracle,
                                  int n_polynomials, int n_test_points,
                                  std::uint64_t seed) {
  if (n_polynomials < 1 || n_test_points < 1)
    throw ValidationError("extremal.domination: need >= 1 polynomials and test points");
  if (oracle == ExtremalCase::TorusIndicator && gs.measure.dim() != gs.basis.body().dim())
    throw ValidationError("extremal.domination: measure/body dimension mismatch");

  const Eigen::MatrixXcd phi = basis_matrix(gs.basis, gs.measure);
  const auto q = gs.weight.q_on(gs.measure);
  const int n = gs.basis.n();
  const ConvexBody* body = &gs.basis.body();

  Rng rng(seed);
  // Fixed test-point set shared by every polynomial.
  const int dim = gs.measure.dim();
  std::vector<std::vector<Complex>> test_points(n_test_points);
  std::vector<double> v_star(test_points.size());
  for (size_t i = 0; i < test_points.size(); ++i) {
    test_points[i] = sample_off_k(oracle, dim, rng);
    v_star[i] = closed_form_extremal(oracle, test_points[i], body);
  }

  DominationReport rep{n_polynomials, n_test_points, 0, neg_inf()};
  const double allowance = std::log1p(1e-6);

  for (int p = 0; p < n_polynomials; ++p) {
    Eigen::VectorXcd coeff(gs.dim);
    for (Eigen::Index i = 0; i < gs.dim; ++i) coeff(i) = rng.complex_normal();

    // Weighted grid sup-norm ||w^n p||_K over the measure support.
    const Eigen::VectorXcd on_grid = phi.transpose() * coeff;
    double log_sup = neg_inf();
    for (size_t j = 0; j < gs.measure.size(); ++j) {
      const double a = std::abs(on_grid(static_cast<Eigen::Index>(j)));
      if (a > 0.0)
        log_sup = std::max(log_sup, std::log(a) - static_cast<double>(n) * q[j]);
    }
    if (!std::isfinite(log_sup))
      throw NumericalError("extremal.domination: polynomial vanishes on the whole grid");

    for (size_t i = 0; i < test_points.size(); ++i) {
      // Evaluate log|p(z)| stably from the log-magnitude basis form.
      const auto entries = gs.basis.eval_log(test_points[i]);
      double m = neg_inf();
      for (Eigen::Index k = 0; k < gs.dim; ++k)
        if (std::abs(coeff(k)) > 0.0 && std::isfinite(entries[k].log_abs))
          m = std::max(m, entries[k].log_abs + std::log(std::abs(coeff(k))));
      if (!std::isfinite(m)) continue;  // p(z) = 0, trivially dominated
      Complex acc(0.0, 0.0);
      for (Eigen::Index k = 0; k < gs.dim; ++k) {
        const double ck = std::abs(coeff(k));
        if (ck == 0.0 || !std::isfinite(entries[k].log_abs)) continue;
        const Complex unit = coeff(k) / ck;
        acc += unit * entries[k].phase *
               std::exp(entries[k].log_abs + std::log(ck) - m);
      }
      if (std::abs(acc) == 0.0) continue;  // cancellation to zero: dominated
      const double log_p = m + std::log(std::abs(acc));
      const double excess =
          (log_p - log_sup) - static_cast<double>(n) * v_star[i] - allowance;
      rep.max_excess = std::max(rep.max_excess, excess);
      if (excess > 0.0) ++rep.violations;
    }
  }
  return rep;
}

}  // namespace pluripot
