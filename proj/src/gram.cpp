#include "pluripot/gram.hpp"

#include <cmath>

namespace pluripot {

Eigen::MatrixXcd basis_matrix(const MultiIndexBasis& basis, const DiscreteMeasure& mu) {
  if (basis.body().dim() != mu.dim())
    throw ValidationError("gram.basis_matrix: basis and measure dimension mismatch");
  const auto dn = basis.dim();
  Eigen::MatrixXcd phi(dn, static_cast<Eigen::Index>(mu.size()));
  parallel_for(0, mu.size(), [&](size_t j) {
    const auto vals = basis.eval(mu.point(j));
    for (Eigen::Index i = 0; i < dn; ++i) phi(i, static_cast<Eigen::Index>(j)) = vals[i];
  });
  return phi;
}

namespace {

/// Weighted square-root factor F (N x d_n): row p = sqrt(mass_p) w_p^n times
/// the *conjugated* basis vector, so that (F^* F)_{IJ} = <z^I, z^J>.
Eigen::MatrixXcd sqrt_factor(const MultiIndexBasis& basis, const DiscreteMeasure& mu,
                             const std::vector<double>& q) {
  const auto dn = basis.dim();
  const int n = basis.n();
  Eigen::MatrixXcd f(static_cast<Eigen::Index>(mu.size()), dn);
  parallel_for(0, mu.size(), [&](size_t p) {
    const auto vals = basis.eval(mu.point(p));
    const double scale = std::sqrt(mu.mass(p)) * std::exp(-static_cast<double>(n) * q[p]);
    for (Eigen::Index i = 0; i < dn; ++i)
      f(static_cast<Eigen::Index>(p), i) = scale * std::conj(vals[i]);
  });
  return f;
}

}  // namespace

GramSystem gram_build(const MultiIndexBasis& basis, const DiscreteMeasure& mu,
                      const WeightSpec& w) {
  GramSystem gs{basis, mu, w, {}, {}, 0.0, false, basis.dim(), basis.degree_sum()};
  const auto dn = basis.dim();
  const auto q = w.q_on(mu);

  const Eigen::MatrixXcd f = sqrt_factor(basis, mu, q);
  gs.gram = f.adjoint() * f;

  bool qr_ok = false;
  if (static_cast<Eigen::Index>(mu.size()) >= dn) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(f);
    const Eigen::MatrixXcd r =
        qr.matrixQR().topLeftCorner(dn, dn).triangularView<Eigen::Upper>();
    double maxdiag = 0.0;
    for (Eigen::Index i = 0; i < dn; ++i) maxdiag = std::max(maxdiag, std::abs(r(i, i)));
    double ld = 0.0;
    qr_ok = maxdiag > 0.0;
    for (Eigen::Index i = 0; i < dn && qr_ok; ++i) {
      const double rkk = std::abs(r(i, i));
      // Hard zero or catastrophic collapse marks rank deficiency.
      if (!(rkk > maxdiag * 1e-150)) {
        qr_ok = false;
        break;
      }
      ld += std::log(rkk);
    }
    if (qr_ok) {
      gs.logdet = 2.0 * ld;
      // chol = R^* with the diagonal rotated positive, so gram = chol chol^*.
      Eigen::MatrixXcd chol = r.adjoint();
      for (Eigen::Index j = 0; j < dn; ++j) {
        const Complex d = chol(j, j);
        const double a = std::abs(d);
        if (a == 0.0) continue;
        const Complex u = std::conj(d) / a;  // unit phase
        for (Eigen::Index i = j; i < dn; ++i) chol(i, j) *= u;
      }
      gs.chol = std::move(chol);
    }
  }

  if (!qr_ok) {
    // Fallback: Cholesky of the assembled Gram with a single jitter attempt.
    Eigen::MatrixXcd g = gs.gram;
    Eigen::LLT<Eigen::MatrixXcd> llt(g);
    if (llt.info() != Eigen::Success) {
      const double jitter = 1e-14 * g.real().trace() / static_cast<double>(dn);
      g.diagonal().array() += jitter;
      llt.compute(g);
    }
    if (llt.info() != Eigen::Success) {
      gs.degenerate = true;
      gs.logdet = neg_inf();
      gs.chol = Eigen::MatrixXcd::Zero(dn, dn);
    } else {
      gs.chol = llt.matrixL();
      double ld = 0.0;
      for (Eigen::Index i = 0; i < dn; ++i) ld += std::log(std::abs(gs.chol(i, i)));
      gs.logdet = 2.0 * ld;
    }
  }
  return gs;
}

double logdet_scaled(const GramSystem& gs) {
  if (gs.degenerate)
    throw NumericalError("gram.logdet_scaled: degenerate Gram system");
  return gs.logdet / (2.0 * static_cast<double>(gs.degree_sum));
}

double bergman_eval(const GramSystem& gs, std::span<const Complex> z, bool include_weight) {
  if (gs.degenerate) throw NumericalError("gram.bergman: degenerate Gram system");
  const auto vals = gs.basis.eval(z);
  Eigen::VectorXcd p(gs.dim);
  for (Eigen::Index i = 0; i < gs.dim; ++i) p(i) = vals[i];
  const Eigen::VectorXcd y = gs.chol.triangularView<Eigen::Lower>().solve(p);
  double b = y.squaredNorm();
  if (include_weight) {
    const double q = gs.weight.q_offgrid(z);
    b *= std::exp(-2.0 * static_cast<double>(gs.basis.n()) * q);
  }
  return b;
}

double bergman_log_eval(const GramSystem& gs, std::span<const Complex> z,
                        bool include_weight) {
  if (gs.degenerate) throw NumericalError("gram.bergman: degenerate Gram system");
  const auto entries = gs.basis.eval_log(z);
  double m = neg_inf();
  for (const auto& e : entries) m = std::max(m, e.log_abs);
  if (!std::isfinite(m)) return neg_inf();  // all monomials vanish
  Eigen::VectorXcd p(gs.dim);
  for (Eigen::Index i = 0; i < gs.dim; ++i) {
    const double la = entries[i].log_abs;
    p(i) = std::isfinite(la) ? entries[i].phase * std::exp(la - m) : Complex(0.0, 0.0);
  }
  const Eigen::VectorXcd y = gs.chol.triangularView<Eigen::Lower>().solve(p);
  double logb = 2.0 * m + std::log(y.squaredNorm());
  if (include_weight)
    logb -= 2.0 * static_cast<double>(gs.basis.n()) * gs.weight.q_offgrid(z);
  return logb;
}

std::vector<double> bergman_on_support(const GramSystem& gs) {
  if (gs.degenerate) throw NumericalError("gram.bergman: degenerate Gram system");
  const Eigen::MatrixXcd phi = basis_matrix(gs.basis, gs.measure);
  const Eigen::MatrixXcd y = gs.chol.triangularView<Eigen::Lower>().solve(phi);
  const auto q = gs.weight.q_on(gs.measure);
  const int n = gs.basis.n();
  std::vector<double> b(gs.measure.size());
  for (size_t j = 0; j < b.size(); ++j)
    b[j] = y.col(static_cast<Eigen::Index>(j)).squaredNorm() *
           std::exp(-2.0 * static_cast<double>(n) * q[j]);
  return b;
}

namespace {

double f_of_t(const MultiIndexBasis& basis, const DiscreteMeasure& mu,
              const std::vector<double>& q0, const std::vector<double>& u, double t) {
  const WeightSpec wt = WeightSpec::shifted_table(q0, u, t);
  const GramSystem gs = gram_build(basis, mu, wt);
  if (gs.degenerate)
    throw NumericalError("gram.f_of_t: degenerate Gram along the weight family");
  return -gs.logdet / (2.0 * static_cast<double>(gs.degree_sum));
}

}  // namespace

DerivativeCheck f_derivative_check(const MultiIndexBasis& basis, const DiscreteMeasure& mu,
                                   const WeightSpec& w, const std::vector<double>& u,
                                   double t0, double h) {
  if (u.size() != mu.size())
    throw ValidationError("gram.f_derivative_check: direction length must match grid size");
  if (!(h > 0.0)) throw ValidationError("gram.f_derivative_check: h must be positive");
  const auto q0 = w.q_on(mu);

  // Analytic derivative at t0: (n/l_n) * integral of u against the Bergman
  // measure of the shifted weight.
  const WeightSpec wt0 = WeightSpec::shifted_table(q0, u, t0);
  const GramSystem gs = gram_build(basis, mu, wt0);
  if (gs.degenerate)
    throw NumericalError("gram.f_derivative_check: degenerate Gram at t0");
  const auto b = bergman_on_support(gs);
  std::vector<double> terms(mu.size());
  for (size_t i = 0; i < mu.size(); ++i) terms[i] = mu.mass(i) * u[i] * b[i];
  const double n_over_ln =
      static_cast<double>(basis.n()) / static_cast<double>(basis.degree_sum());
  DerivativeCheck out;
  out.analytic = n_over_ln * pairwise_sum(terms);
  out.finite_difference =
      (f_of_t(basis, mu, q0, u, t0 + h) - f_of_t(basis, mu, q0, u, t0 - h)) / (2.0 * h);
  const double scale =
      std::max({std::abs(out.analytic), std::abs(out.finite_difference), 1e-300});
  out.rel_err = std::abs(out.analytic - out.finite_difference) / scale;
  return out;
}

ConcavityScan concavity_scan(const MultiIndexBasis& basis, const DiscreteMeasure& mu,
                             const WeightSpec& w, const std::vector<double>& u,
                             double t_min, double t_max, int n_t) {
  if (n_t < 3) throw ValidationError("gram.concavity_scan: need at least 3 t-points");
  if (!(t_max > t_min)) throw ValidationError("gram.concavity_scan: need t_min < t_max");
  const auto q0 = w.q_on(mu);
  ConcavityScan scan;
  scan.t.resize(n_t);
  scan.f.resize(n_t);
  for (int i = 0; i < n_t; ++i) {
    scan.t[i] = t_min + (t_max - t_min) * i / (n_t - 1);
    scan.f[i] = f_of_t(basis, mu, q0, u, scan.t[i]);
  }
  scan.second_difference.resize(n_t - 2);
  for (int i = 1; i + 1 < n_t; ++i)
    scan.second_difference[i - 1] = scan.f[i - 1] - 2.0 * scan.f[i] + scan.f[i + 1];
  return scan;
}

ZnCrosscheck zn_crosscheck(const MultiIndexBasis& basis, const DiscreteMeasure& mu,
                           const WeightSpec& w, std::uint64_t trials, std::uint64_t seed) {
  const auto dn = basis.dim();
  if (dn > 4)
    throw ValidationError("gram.zn_crosscheck: d_n must be <= 4 (got " +
                          std::to_string(dn) + ")");
  if (!mu.is_probability())
    throw ValidationError("gram.zn_crosscheck: measure must be a probability measure");
  if (trials < 2) throw ValidationError("gram.zn_crosscheck: need >= 2 trials");

  const GramSystem gs = gram_build(basis, mu, w);
  if (gs.degenerate)
    throw NumericalError("gram.zn_crosscheck: degenerate Gram system");
  double fact = 1.0;
  for (Eigen::Index i = 2; i <= dn; ++i) fact *= static_cast<double>(i);
  const double from_det = fact * std::exp(gs.logdet);

  // Precompute weighted basis columns and the sampling CDF.
  const Eigen::MatrixXcd phi = basis_matrix(basis, mu);
  const auto q = w.q_on(mu);
  const int n = basis.n();
  Eigen::MatrixXcd wphi = phi;
  for (size_t j = 0; j < mu.size(); ++j)
    wphi.col(static_cast<Eigen::Index>(j)) *=
        std::exp(-static_cast<double>(n) * q[j]);
  std::vector<double> cdf(mu.size());
  double acc = 0.0;
  for (size_t j = 0; j < mu.size(); ++j) {
    acc += mu.mass(j);
    cdf[j] = acc;
  }

  Rng rng(seed);
  // Welford accumulation of |det|^2 over iid d_n-tuples.
  double mean = 0.0, m2 = 0.0;
  Eigen::MatrixXcd m(dn, dn);
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (Eigen::Index c = 0; c < dn; ++c) {
      const size_t j = rng.sample_cdf(cdf);
      m.col(c) = wphi.col(static_cast<Eigen::Index>(j));
    }
    const double v = std::norm(m.determinant());
    const double delta = v - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (v - mean);
  }

  ZnCrosscheck out;
  out.trials = trials;
  out.mc_mean = mean;
  out.mc_std_err = std::sqrt(m2 / (static_cast<double>(trials - 1))) /
                   std::sqrt(static_cast<double>(trials));
  out.from_det = from_det;
  out.rel_err = std::abs(mean - from_det) / std::max(std::abs(from_det), 1e-300);
  return out;
}

}  // namespace pluripot
