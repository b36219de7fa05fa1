#include "pluripot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace pluripot {

namespace {

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot_int(std::span<const Rational> a, const MultiIndex& j) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(j[i]);
  return s;
}

/// Rank of the set {v - v0} over Q, by fraction-free Gaussian elimination.
int affine_rank(const std::vector<std::vector<Rational>>& vertices, int dim) {
  std::vector<std::vector<Rational>> rows;
  for (size_t i = 1; i < vertices.size(); ++i) {
    std::vector<Rational> r(dim);
    for (int c = 0; c < dim; ++c) r[c] = vertices[i][c] - vertices[0][c];
    rows.push_back(std::move(r));
  }
  int rank = 0;
  for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
    size_t pivot = rows.size();
    for (size_t r = rank; r < rows.size(); ++r) {
      if (rows[r][col].sign() != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col].sign() == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (int c = col; c < dim; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

Rational det2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  return a * d - b * c;
}

Rational det3(const std::vector<Rational>& u, const std::vector<Rational>& v,
              const std::vector<Rational>& w) {
  return u[0] * det2(v[1], v[2], w[1], w[2]) - u[1] * det2(v[0], v[2], w[0], w[2]) +
         u[2] * det2(v[0], v[1], w[0], w[1]);
}

std::vector<Rational> sub(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Rational coord_sum(const std::vector<Rational>& v) {
  Rational s = 0;
  for (const auto& c : v) s += c;
  return s;
}

}  // namespace

ConvexBody::ConvexBody(int dim, std::vector<std::vector<Rational>> vertices,
                       std::optional<std::vector<Halfspace>> facets)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {
  if (dim_ < 1 || dim_ > 3)
    throw ValidationError("geometry.body: dimension must be 1, 2, or 3 (got " +
                          std::to_string(dim_) + ")");
  if (vertices_.size() < static_cast<size_t>(dim_) + 1)
    throw ValidationError("geometry.body: need at least dim+1 vertices");
  for (const auto& v : vertices_) {
    if (static_cast<int>(v.size()) != dim_)
      throw ValidationError("geometry.body: vertex arity does not match dimension");
    for (const auto& c : v)
      if (c.sign() < 0)
        throw ValidationError("geometry.body: vertices must lie in the nonnegative orthant");
  }
  for (size_t i = 0; i < vertices_.size(); ++i)
    for (size_t j = i + 1; j < vertices_.size(); ++j)
      if (vertices_[i] == vertices_[j])
        throw ValidationError("geometry.body: duplicate vertex in list");
  if (affine_rank(vertices_, dim_) != dim_)
    throw ValidationError("geometry.body: degenerate body (vertices do not affinely span R^d)");

  if (facets_) {
    if (facets_->empty())
      throw ValidationError("geometry.body: facet list present but empty");
    for (const auto& f : *facets_)
      if (static_cast<int>(f.normal.size()) != dim_)
        throw ValidationError("geometry.body: facet normal arity does not match dimension");
    for (const auto& v : vertices_)
      for (const auto& f : *facets_)
        if (dot(f.normal, v) > f.offset)
          throw ValidationError("geometry.body: a vertex violates a facet inequality");
    for (const auto& f : *facets_) {
      int tight = 0;
      for (const auto& v : vertices_)
        if (dot(f.normal, v) == f.offset) ++tight;
      if (tight < dim_)
        throw ValidationError("geometry.body: facet not supported by enough vertices");
    }
    for (const auto& v : vertices_) {
      int tight = 0;
      for (const auto& f : *facets_)
        if (dot(f.normal, v) == f.offset) ++tight;
      if (tight < dim_)
        throw ValidationError(
            "geometry.body: a listed vertex is not an extreme point (tight at fewer than "
            "dim facets)");
    }
  } else if (dim_ == 1) {
    // Interval: after dedup exactly the two endpoints are extreme.
    if (vertices_.size() != 2)
      throw ValidationError("geometry.body: a 1-d body is an interval with exactly 2 vertices");
  }
}

const std::vector<Halfspace>& ConvexBody::facets() const {
  if (!facets_)
    throw ValidationError("geometry.body: facet representation required but missing");
  return *facets_;
}

ConvexBody ConvexBody::simplex(int dim) {
  std::vector<std::vector<Rational>> verts(dim + 1, std::vector<Rational>(dim, 0));
  for (int i = 0; i < dim; ++i) verts[i + 1][i] = 1;
  std::vector<Halfspace> facets;
  for (int i = 0; i < dim; ++i) {
    Halfspace h;
    h.normal.assign(dim, 0);
    h.normal[i] = -1;
    h.offset = 0;
    facets.push_back(std::move(h));
  }
  Halfspace top;
  top.normal.assign(dim, 1);
  top.offset = 1;
  facets.push_back(std::move(top));
  return ConvexBody(dim, std::move(verts), std::move(facets));
}

ConvexBody ConvexBody::box(int dim) {
  std::vector<std::vector<Rational>> verts;
  for (int mask = 0; mask < (1 << dim); ++mask) {
    std::vector<Rational> v(dim);
    for (int i = 0; i < dim; ++i) v[i] = (mask >> i) & 1;
    verts.push_back(std::move(v));
  }
  std::vector<Halfspace> facets;
  for (int i = 0; i < dim; ++i) {
    Halfspace lo, hi;
    lo.normal.assign(dim, 0);
    lo.normal[i] = -1;
    lo.offset = 0;
    hi.normal.assign(dim, 0);
    hi.normal[i] = 1;
    hi.offset = 1;
    facets.push_back(std::move(lo));
    facets.push_back(std::move(hi));
  }
  return ConvexBody(dim, std::move(verts), std::move(facets));
}

ConvexBody ConvexBody::interval(const Rational& a, const Rational& b) {
  if (!(a < b)) throw ValidationError("geometry.interval: need a < b");
  std::vector<Halfspace> facets(2);
  facets[0].normal = {Rational(-1)};
  facets[0].offset = -a;
  facets[1].normal = {Rational(1)};
  facets[1].offset = b;
  return ConvexBody(1, {{a}, {b}}, std::move(facets));
}

bool ConvexBody::contains(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw ValidationError("geometry.contains: point arity does not match dimension");
  if (facets_) {
    for (const auto& f : *facets_)
      if (dot(f.normal, x) > f.offset) return false;
    return true;
  }
  if (dim_ == 1) {
    const Rational lo = std::min(vertices_[0][0], vertices_[1][0]);
    const Rational hi = std::max(vertices_[0][0], vertices_[1][0]);
    return lo <= x[0] && x[0] <= hi;
  }
  throw ValidationError("geometry.contains: facet representation required for d >= 2");
}

bool ConvexBody::contains_origin() const {
  std::vector<Rational> zero(dim_, Rational(0));
  return contains(zero);
}

std::string ConvexBody::describe() const {
  std::ostringstream os;
  os << "body(d=" << dim_ << ", vertices={";
  for (size_t i = 0; i < vertices_.size(); ++i) {
    os << (i ? ", (" : "(");
    for (int c = 0; c < dim_; ++c) os << (c ? "," : "") << vertices_[i][c].str();
    os << ")";
  }
  os << "}" << (facets_ ? ", facets=" + std::to_string(facets_->size()) : "") << ")";
  return os.str();
}

bool graded_before(const MultiIndex& a, const MultiIndex& b) {
  const auto deg = [](const MultiIndex& j) {
    return std::accumulate(j.begin(), j.end(), std::int64_t{0});
  };
  const std::int64_t da = deg(a), db = deg(b);
  if (da != db) return da < db;
  // Within a degree, leading coordinate dominant and *larger* exponent first:
  // the classical listing 1, z1, z2, z1^2, z1 z2, z2^2.
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<MultiIndex> lattice_points(const ConvexBody& body, int n) {
  if (n < 1) throw ValidationError("geometry.lattice_points: n must be >= 1");
  const int d = body.dim();

  std::vector<MultiIndex> out;
  if (d == 1) {
    Rational lo = body.vertices()[0][0], hi = lo;
    for (const auto& v : body.vertices()) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    const std::int64_t a = (Rational(n) * lo).ceil();
    const std::int64_t b = (Rational(n) * hi).floor();
    for (std::int64_t j = a; j <= b; ++j) out.push_back({j});
    std::sort(out.begin(), out.end(), graded_before);
    return out;
  }

  if (!body.has_facets())
    throw ValidationError(
        "geometry.lattice_points: facet representation required for d >= 2 "
        "(body has vertices only)");

  // Bounding box of nP from the vertices; coordinates are >= 0.
  std::vector<std::int64_t> lo(d), hi(d);
  for (int c = 0; c < d; ++c) {
    Rational mn = body.vertices()[0][c], mx = mn;
    for (const auto& v : body.vertices()) {
      mn = std::min(mn, v[c]);
      mx = std::max(mx, v[c]);
    }
    lo[c] = (Rational(n) * mn).ceil();
    hi[c] = (Rational(n) * mx).floor();
  }

  MultiIndex j(d, 0);
  const auto& facets = body.facets();
  const Rational rn(n);
  std::function<void(int)> rec = [&](int c) {
    if (c == d) {
      for (const auto& f : facets)
        if (dot_int(f.normal, j) > rn * f.offset) return;
      out.push_back(j);
      return;
    }
    for (std::int64_t v = lo[c]; v <= hi[c]; ++v) {
      j[c] = v;
      rec(c + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), graded_before);
  return out;
}

double h_p_eval(const ConvexBody& body, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != body.dim())
    throw ValidationError("geometry.h_p_eval: point arity does not match dimension");
  const int d = body.dim();
  std::vector<double> logs(d);
  for (int i = 0; i < d; ++i) logs[i] = std::log(std::abs(z[i]));  // -inf at 0 is fine
  double best = neg_inf();
  for (const auto& v : body.vertices()) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      if (v[i].sign() == 0) continue;  // 0 * log|z_i| = 0 even at z_i = 0
      s += v[i].to_double() * logs[i];
    }
    best = std::max(best, s);
  }
  return best;
}

namespace {

/// Vertices incident to a facet, ordered around the facet polygon (d=3) or
/// along the edge (d=2), oriented so the facet normal is outward for the
/// returned traversal.
std::vector<size_t> facet_cycle(const ConvexBody& body, const Halfspace& f) {
  std::vector<size_t> inc;
  for (size_t i = 0; i < body.vertices().size(); ++i)
    if (dot(f.normal, body.vertices()[i]) == f.offset) inc.push_back(i);

  const int d = body.dim();
  if (d == 2) {
    if (inc.size() != 2)
      throw ValidationError("geometry.volume: 2-d facet must touch exactly 2 vertices");
    // Order along the tangent t = rot90(normal) so traversal is CCW around P.
    const Rational tx = -f.normal[1], ty = f.normal[0];
    const auto& a = body.vertices()[inc[0]];
    const auto& b = body.vertices()[inc[1]];
    if (tx * a[0] + ty * a[1] > tx * b[0] + ty * b[1]) std::swap(inc[0], inc[1]);
    return inc;
  }

  // d = 3: order the facet polygon by angle around its centroid in the plane,
  // with exact sign comparisons in the projection dropping the largest normal
  // coordinate.
  if (inc.size() < 3)
    throw ValidationError("geometry.volume: 3-d facet must touch at least 3 vertices");
  int drop = 0;
  for (int c = 1; c < 3; ++c)
    if (f.normal[c].abs() > f.normal[drop].abs()) drop = c;
  const int u = (drop + 1) % 3, v = (drop + 2) % 3;

  std::vector<Rational> cen(3, 0);
  for (size_t idx : inc)
    for (int c = 0; c < 3; ++c) cen[c] += body.vertices()[idx][c];
  const Rational inv(1, static_cast<std::int64_t>(inc.size()));
  for (auto& c : cen) c *= inv;

  const auto rel = [&](size_t idx) {
    const auto& p = body.vertices()[idx];
    return std::pair<Rational, Rational>(p[u] - cen[u], p[v] - cen[v]);
  };
  const auto half = [](const std::pair<Rational, Rational>& p) {
    // 0 for upper half plane (y > 0, or y == 0 and x > 0), 1 for lower.
    if (p.second.sign() > 0) return 0;
    if (p.second.sign() < 0) return 1;
    return p.first.sign() > 0 ? 0 : 1;
  };
  std::sort(inc.begin(), inc.end(), [&](size_t i, size_t j) {
    const auto a = rel(i), b = rel(j);
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    const Rational cross = a.first * b.second - a.second * b.first;
    return cross.sign() > 0;
  });

  // Flip if the polygon orientation disagrees with the outward normal.
  const auto& p0 = body.vertices()[inc[0]];
  const auto& p1 = body.vertices()[inc[1]];
  const auto& p2 = body.vertices()[inc[2]];
  std::vector<Rational> e1 = sub(p1, p0), e2 = sub(p2, p0);
  std::vector<Rational> nrm = {e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                               e1[0] * e2[1] - e1[1] * e2[0]};
  if (dot(nrm, f.normal).sign() < 0) std::reverse(inc.begin() + 1, inc.end());
  return inc;
}

}  // namespace

VolumeInfo volume_and_cp(const ConvexBody& body, size_t apex_index) {
  const int d = body.dim();
  if (apex_index >= body.vertices().size())
    throw ValidationError("geometry.volume: apex index out of range");

  VolumeInfo info;
  if (d == 1) {
    Rational lo = body.vertices()[0][0], hi = lo;
    for (const auto& v : body.vertices()) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    info.volume = hi - lo;
    info.coord_integral = (hi * hi - lo * lo) * Rational(1, 2);
    return info;
  }

  const auto& apex = body.vertices()[apex_index];
  const Rational ell_apex = coord_sum(apex);
  Rational vol = 0, cp = 0;

  for (const auto& f : body.facets()) {
    if (dot(f.normal, apex) == f.offset) continue;  // cone over this facet is flat
    const auto cyc = facet_cycle(body, f);
    if (d == 2) {
      const auto& a = body.vertices()[cyc[0]];
      const auto& b = body.vertices()[cyc[1]];
      const Rational area =
          det2(a[0] - apex[0], b[0] - apex[0], a[1] - apex[1], b[1] - apex[1]) *
          Rational(1, 2);
      vol += area;
      cp += area * (ell_apex + coord_sum(a) + coord_sum(b)) * Rational(1, 3);
    } else {
      for (size_t t = 1; t + 1 < cyc.size(); ++t) {
        const auto& a = body.vertices()[cyc[0]];
        const auto& b = body.vertices()[cyc[t]];
        const auto& c = body.vertices()[cyc[t + 1]];
        const Rational v6 = det3(sub(a, apex), sub(b, apex), sub(c, apex));
        const Rational tet = v6 * Rational(1, 6);
        vol += tet;
        cp += tet * (ell_apex + coord_sum(a) + coord_sum(b) + coord_sum(c)) * Rational(1, 4);
      }
    }
  }

  if (vol.sign() <= 0)
    throw NumericalError("geometry.volume: nonpositive volume (inconsistent facet data)");
  info.volume = vol;
  info.coord_integral = cp;
  return info;
}

Rational monge_ampere_mass(const ConvexBody& body) {
  Rational fact = 1;
  for (int i = 2; i <= body.dim(); ++i) fact *= i;
  return fact * volume_and_cp(body).volume;
}

InclusionConstants simplex_inclusion(const ConvexBody& body) {
  const int d = body.dim();
  InclusionConstants out;

  // A = min integer with P inside A*S, i.e. ceil(max over vertices of sum x_i).
  Rational mx = 0;
  for (const auto& v : body.vertices()) mx = std::max(mx, coord_sum(v));
  out.A = mx.ceil();
  if (out.A < 1) out.A = 1;

  // k = min integer with S inside kP. Needs 0 in P and, for each axis i, the
  // largest t_i with t_i * e_i in P to satisfy 1/k <= t_i.
  if (!body.contains_origin()) return out;

  std::int64_t k = 1;
  const auto axis_reach = [&](int axis) -> std::optional<Rational> {
    if (d == 1) {
      Rational hi = std::max(body.vertices()[0][0], body.vertices()[1][0]);
      return hi.sign() > 0 ? std::optional<Rational>(hi) : std::nullopt;
    }
    // Feasible t for t*e_axis in P is an interval; its top is the min of
    // offset/normal_axis over facets with positive axis coefficient.
    std::optional<Rational> top;
    for (const auto& f : body.facets()) {
      if (f.normal[axis].sign() > 0) {
        const Rational bound = f.offset / f.normal[axis];
        if (!top || bound < *top) top = bound;
      } else if (f.normal[axis].sign() == 0 || f.normal[axis].sign() < 0) {
        // Only constrains from below; origin feasibility already checked.
        if (f.normal[axis].sign() == 0 && Rational(0) > f.offset) return std::nullopt;
      }
    }
    if (!top) return std::nullopt;  // unbounded cannot happen for a polytope, treat as absent
    if (top->sign() <= 0) return std::nullopt;
    return top;
  };

  for (int i = 0; i < d; ++i) {
    const auto t = axis_reach(i);
    if (!t) return out;  // axis never enters P beyond the origin: k absent
    // smallest integer k with 1/k <= t, i.e. k >= 1/t
    const Rational need = Rational(1) / *t;
    k = std::max(k, need.ceil());
  }

  // Defensive exact re-check of all simplex vertices at the found k.
  const Rational invk(1, k);
  std::vector<Rational> pt(d, Rational(0));
  if (!body.contains(pt)) return out;
  for (int i = 0; i < d; ++i) {
    std::fill(pt.begin(), pt.end(), Rational(0));
    pt[i] = invk;
    if (!body.contains(pt)) return out;  // should not happen; stay safe
  }
  out.k = k;
  return out;
}

}  // namespace pluripot
