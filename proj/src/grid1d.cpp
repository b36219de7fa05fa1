#include "pluripot/grid1d.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace pluripot {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

bool slope_equal(double a, double b) { return std::abs(a - b) <= 1e-12; }

}  // namespace

GridFunction1D::GridFunction1D(Complex center, double half_width, int n,
                               std::vector<double> values, std::optional<double> slope,
                               std::vector<std::uint8_t> mask)
    : center_(center),
      half_width_(half_width),
      n_(n),
      values_(std::move(values)),
      mask_(std::move(mask)),
      slope_(slope) {
  if (n_ < 3) throw ValidationError("grid1d: need at least a 3x3 grid");
  if (!(half_width_ > 0.0)) throw ValidationError("grid1d: half width must be positive");
  const size_t expect = static_cast<size_t>(n_) * static_cast<size_t>(n_);
  if (values_.size() != expect)
    throw ValidationError("grid1d: value array does not match N*N");
  if (!mask_.empty() && mask_.size() != expect)
    throw ValidationError("grid1d: mask does not match N*N");
  for (double v : values_)
    if (!std::isfinite(v))
      throw ValidationError("grid1d: non-finite sample (pull the window off singular points)");
}

GridFunction1D GridFunction1D::sample(const std::function<double(Complex)>& f,
                                      Complex center, double half_width, int n,
                                      std::optional<double> slope) {
  if (n < 3) throw ValidationError("grid1d.sample: need at least a 3x3 grid");
  std::vector<double> vals(static_cast<size_t>(n) * static_cast<size_t>(n));
  const double h = 2.0 * half_width / (n - 1);
  parallel_for(0, static_cast<size_t>(n), [&](size_t row) {
    for (int col = 0; col < n; ++col) {
      const Complex z = center + Complex(-half_width + col * h,
                                         -half_width + static_cast<double>(row) * h);
      vals[row * static_cast<size_t>(n) + static_cast<size_t>(col)] = f(z);
    }
  });
  return GridFunction1D(center, half_width, n, std::move(vals), slope);
}

bool GridFunction1D::same_layout(const GridFunction1D& o) const {
  return center_ == o.center_ && half_width_ == o.half_width_ && n_ == o.n_ &&
         mask_ == o.mask_;
}

GridFunction1D GridFunction1D::interpolate_to(const GridFunction1D& o, double t) const {
  if (!same_layout(o))
    throw ValidationError("grid1d.interpolate: layouts differ (grid/mask mismatch)");
  if (slope_.has_value() != o.slope_.has_value())
    throw ValidationError("grid1d.interpolate: one endpoint carries a growth slope and "
                          "the other does not");
  std::vector<double> vals(values_.size());
  for (size_t i = 0; i < vals.size(); ++i)
    vals[i] = values_[i] + t * (o.values_[i] - values_[i]);
  std::optional<double> slope;
  if (slope_) slope = *slope_ + t * (*o.slope_ - *slope_);
  return GridFunction1D(center_, half_width_, n_, std::move(vals), slope, mask_);
}

GridFunction1D GridFunction1D::shifted(double c) const {
  std::vector<double> vals = values_;
  for (double& v : vals) v += c;
  return GridFunction1D(center_, half_width_, n_, std::move(vals), slope_, mask_);
}

void GridFunction1D::save(const std::string& path) const {
  nlohmann::json header;
  header["center"] = {center_.real(), center_.imag()};
  header["half_width"] = half_width_;
  header["n"] = n_;
  if (slope_) header["slope"] = *slope_;
  if (!mask_.empty()) header["mask"] = mask_;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("grid1d.save: cannot open " + path);
  out << header.dump() << "\n";
  out.write(reinterpret_cast<const char*>(values_.data()),
            static_cast<std::streamsize>(values_.size() * sizeof(double)));
  if (!out) throw ValidationError("grid1d.save: write failed for " + path);
}

GridFunction1D GridFunction1D::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("grid1d.load: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("grid1d.load: missing header line");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("grid1d.load: bad header: ") + e.what());
  }
  const auto c = header.at("center");
  const Complex center(c.at(0).get<double>(), c.at(1).get<double>());
  const double hw = header.at("half_width").get<double>();
  const int n = header.at("n").get<int>();
  std::optional<double> slope;
  if (header.contains("slope")) slope = header["slope"].get<double>();
  std::vector<std::uint8_t> mask;
  if (header.contains("mask")) mask = header["mask"].get<std::vector<std::uint8_t>>();
  std::vector<double> vals(static_cast<size_t>(n) * static_cast<size_t>(n));
  in.read(reinterpret_cast<char*>(vals.data()),
          static_cast<std::streamsize>(vals.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(vals.size() * sizeof(double)))
    throw ValidationError("grid1d.load: truncated value payload");
  return GridFunction1D(center, hw, n, std::move(vals), slope, std::move(mask));
}

namespace {

/// Interior set: nodes whose full 5-point stencil lies on the grid and inside
/// the mask. Masked-out nodes keep their sampled values (they only leave the
/// integration domain), which the flux sum references across the boundary.
inline bool in_interior(const GridFunction1D& u, int r, int c) {
  const int n = u.n();
  if (r < 1 || r >= n - 1 || c < 1 || c >= n - 1) return false;
  return u.masked_in(r, c) && u.masked_in(r - 1, c) && u.masked_in(r + 1, c) &&
         u.masked_in(r, c - 1) && u.masked_in(r, c + 1);
}

}  // namespace

LaplacianMass ddc_1d(const GridFunction1D& u) {
  const int n = u.n();
  LaplacianMass out;
  out.cell_mass.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);

  std::vector<double> interior_terms;
  interior_terms.reserve(out.cell_mass.size());
  std::vector<double> flux_terms;

  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (!in_interior(u, r, c)) continue;
      const double stencil = u.value(r - 1, c) + u.value(r + 1, c) + u.value(r, c - 1) +
                             u.value(r, c + 1) - 4.0 * u.value(r, c);
      const double m = stencil / kTwoPi;
      out.cell_mass[static_cast<size_t>(r) * n + c] = m;
      interior_terms.push_back(m);

      // Edges leaving the interior set contribute to the outward flux.
      const int dr[4] = {-1, 1, 0, 0};
      const int dc[4] = {0, 0, -1, 1};
      for (int k = 0; k < 4; ++k) {
        const int rr = r + dr[k], cc = c + dc[k];
        if (!in_interior(u, rr, cc))
          flux_terms.push_back((u.value(rr, cc) - u.value(r, c)) / kTwoPi);
      }
    }
  }

  out.interior_total = pairwise_sum(interior_terms);
  out.boundary_flux = pairwise_sum(flux_terms);
  if (u.slope()) out.exterior = *u.slope() - out.boundary_flux;
  return out;
}

namespace {

double ring_mean_difference(const GridFunction1D& u, const GridFunction1D& v) {
  const int n = u.n();
  std::vector<double> vals;
  vals.reserve(4 * static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) {
    vals.push_back(u.value(0, c) - v.value(0, c));
    vals.push_back(u.value(n - 1, c) - v.value(n - 1, c));
  }
  for (int r = 1; r + 1 < n; ++r) {
    vals.push_back(u.value(r, 0) - v.value(r, 0));
    vals.push_back(u.value(r, n - 1) - v.value(r, n - 1));
  }
  return pairwise_sum(vals) / static_cast<double>(vals.size());
}

void check_energy_pair(const GridFunction1D& u, const GridFunction1D& v) {
  if (!u.same_layout(v))
    throw ValidationError("energy: grid layouts differ (center/half-width/N/mask)");
  if (u.slope().has_value() != v.slope().has_value())
    throw ValidationError(
        "energy: one argument carries a growth slope and the other does not");
  if (u.slope() && !slope_equal(*u.slope(), *v.slope()))
    throw ValidationError("energy: asymptotic slope mismatch (" + format17(*u.slope()) +
                          " vs " + format17(*v.slope()) + ")");
}

}  // namespace

double energy_1d(const GridFunction1D& u, const GridFunction1D& v) {
  check_energy_pair(u, v);
  const LaplacianMass mu = ddc_1d(u);
  const LaplacianMass mv = ddc_1d(v);

  const int n = u.n();
  std::vector<double> terms;
  terms.reserve(mu.cell_mass.size());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const size_t i = static_cast<size_t>(r) * n + c;
      const double m = mu.cell_mass[i] + mv.cell_mass[i];
      if (m != 0.0) terms.push_back((u.value(r, c) - v.value(r, c)) * m);
    }
  double e = pairwise_sum(terms);
  if (mu.exterior || mv.exterior) {
    const double ext = (mu.exterior ? *mu.exterior : 0.0) +
                       (mv.exterior ? *mv.exterior : 0.0);
    e += ring_mean_difference(u, v) * ext;
  }
  return e;
}

CocycleCheck cocycle_check(const GridFunction1D& u, const GridFunction1D& v,
                           const GridFunction1D& w) {
  CocycleCheck out;
  out.e_uv = energy_1d(u, v);
  out.e_vw = energy_1d(v, w);
  out.e_wu = energy_1d(w, u);
  out.cocycle_sum = out.e_uv + out.e_vw + out.e_wu;
  return out;
}

EnergyDerivativeCheck energy_derivative_check(const GridFunction1D& u,
                                              const GridFunction1D& u_prime,
                                              const GridFunction1D& v, double t0,
                                              double h) {
  if (!(h > 0.0)) throw ValidationError("energy_derivative_check: h must be positive");
  check_energy_pair(u, v);
  check_energy_pair(u_prime, v);

  // Analytic: 2 * integral of (u' - u) against dd^c of u_t0 (interior cells
  // plus the exterior point mass weighted by the boundary mean of u' - u).
  const GridFunction1D ut0 = u.interpolate_to(u_prime, t0);
  const LaplacianMass mt0 = ddc_1d(ut0);
  const int n = u.n();
  std::vector<double> terms;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const size_t i = static_cast<size_t>(r) * n + c;
      if (mt0.cell_mass[i] != 0.0)
        terms.push_back((u_prime.value(r, c) - u.value(r, c)) * mt0.cell_mass[i]);
    }
  double analytic = pairwise_sum(terms);
  if (mt0.exterior) analytic += ring_mean_difference(u_prime, u) * *mt0.exterior;
  analytic *= 2.0;

  const double ep = energy_1d(u.interpolate_to(u_prime, t0 + h), v);
  const double em = energy_1d(u.interpolate_to(u_prime, t0 - h), v);
  EnergyDerivativeCheck out;
  out.analytic = analytic;
  out.finite_difference = (ep - em) / (2.0 * h);
  const double scale =
      std::max({std::abs(out.analytic), std::abs(out.finite_difference), 1e-300});
  out.rel_err = std::abs(out.analytic - out.finite_difference) / scale;
  return out;
}

}  // namespace pluripot
