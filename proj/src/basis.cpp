#include "pluripot/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pluripot {

namespace {

std::int64_t total_degree(const MultiIndex& j) {
  return std::accumulate(j.begin(), j.end(), std::int64_t{0});
}

}  // namespace

MultiIndexBasis::MultiIndexBasis(std::shared_ptr<const ConvexBody> body, int n)
    : body_(std::move(body)), n_(n) {
  if (!body_) throw ValidationError("basis: null body");
  exponents_ = lattice_points(*body_, n);
  if (exponents_.empty())
    throw ValidationError("basis: nP contains no lattice points at n=" + std::to_string(n));
  for (const auto& j : exponents_) degree_sum_ += total_degree(j);
}

MultiIndexBasis MultiIndexBasis::with_exponents(std::shared_ptr<const ConvexBody> body, int n,
                                                std::vector<MultiIndex> exponents) {
  if (!body) throw ValidationError("basis: null body");
  auto reference = lattice_points(*body, n);
  auto sorted = exponents;
  std::sort(sorted.begin(), sorted.end(), graded_before);
  if (sorted != reference)
    throw ValidationError("basis.with_exponents: exponent list is not nP cap Z^d");
  MultiIndexBasis b;
  b.body_ = std::move(body);
  b.n_ = n;
  b.exponents_ = std::move(exponents);
  for (const auto& j : b.exponents_) b.degree_sum_ += total_degree(j);
  return b;
}

std::vector<Complex> MultiIndexBasis::eval(std::span<const Complex> z) const {
  const int d = body_->dim();
  if (static_cast<int>(z.size()) != d)
    throw ValidationError("basis.eval: point arity does not match dimension");

  // Power tables per coordinate (0^0 = 1 by the empty-product convention).
  std::vector<std::vector<Complex>> pows(d);
  for (int c = 0; c < d; ++c) {
    std::int64_t maxe = 0;
    for (const auto& j : exponents_) maxe = std::max(maxe, j[c]);
    pows[c].resize(maxe + 1);
    pows[c][0] = Complex(1.0, 0.0);
    for (std::int64_t e = 1; e <= maxe; ++e) pows[c][e] = pows[c][e - 1] * z[c];
  }

  std::vector<Complex> out(exponents_.size());
  for (size_t i = 0; i < exponents_.size(); ++i) {
    Complex v(1.0, 0.0);
    for (int c = 0; c < d; ++c) v *= pows[c][exponents_[i][c]];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalError(
          "basis.eval: non-finite monomial value; use the log-magnitude form");
    out[i] = v;
  }
  return out;
}

std::vector<MultiIndexBasis::LogEntry> MultiIndexBasis::eval_log(
    std::span<const Complex> z) const {
  const int d = body_->dim();
  if (static_cast<int>(z.size()) != d)
    throw ValidationError("basis.eval_log: point arity does not match dimension");

  std::vector<double> logabs(d);
  std::vector<double> args(d);
  for (int c = 0; c < d; ++c) {
    logabs[c] = std::log(std::abs(z[c]));  // -inf at zero
    args[c] = std::arg(z[c]);
  }

  std::vector<LogEntry> out(exponents_.size());
  for (size_t i = 0; i < exponents_.size(); ++i) {
    double la = 0.0;
    double ang = 0.0;
    for (int c = 0; c < d; ++c) {
      const auto e = exponents_[i][c];
      if (e == 0) continue;
      la += static_cast<double>(e) * logabs[c];
      ang += static_cast<double>(e) * args[c];
    }
    out[i].log_abs = la;
    out[i].phase = std::isfinite(la) ? std::polar(1.0, ang) : Complex(1.0, 0.0);
  }
  return out;
}

DimInfo dims(const ConvexBody& body, int n) {
  const auto pts = lattice_points(body, n);
  DimInfo info;
  info.dim = static_cast<std::int64_t>(pts.size());
  for (const auto& j : pts) info.degree_sum += total_degree(j);
  const int d = body.dim();
  // f_n = (l_n/d_n) / (n d/(d+1)) = (d+1) l_n / (d n d_n), exact.
  info.f_ratio = Rational(static_cast<std::int64_t>(d + 1) * info.degree_sum) /
                 Rational(static_cast<std::int64_t>(d) * n * info.dim);
  info.ma_mass = monge_ampere_mass(body);
  return info;
}

Rational a_limit(const ConvexBody& body) {
  const auto vi = volume_and_cp(body);
  const int d = body.dim();
  return Rational(d + 1, d) * vi.coord_integral / vi.volume;
}

}  // namespace pluripot
