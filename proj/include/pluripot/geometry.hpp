// Convex bodies P in the nonnegative orthant of R^d (d <= 3), represented by
// exact rational vertices plus an optional facet (half-space) list. All
// combinatorial/measure-theoretic quantities (lattice points, volume, the
// first-coordinate-sum integral, simplex inclusion constants) are computed in
// exact rational arithmetic.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pluripot/rational.hpp"
#include "pluripot/util.hpp"

namespace pluripot {

using MultiIndex = std::vector<std::int64_t>;

/// Half-space {x : normal . x <= offset}.
struct Halfspace {
  std::vector<Rational> normal;
  Rational offset;
};

struct VolumeInfo {
  Rational volume;          // Vol_d(P)
  Rational coord_integral;  // C_P = integral over P of (x_1 + ... + x_d)
};

/// Inclusion constants against the standard simplex S:
///   k = min integer >= 1 with S subset of kP (absent if no such k), and
///   A = min integer >= 1 with P subset of AS.
struct InclusionConstants {
  std::optional<std::int64_t> k;
  std::int64_t A = 0;
};

class ConvexBody {
 public:
  /// Validates: 1 <= dim <= 3, coordinates >= 0, vertices affinely span R^dim,
  /// duplicates rejected, and (when facets are given) every vertex satisfies
  /// every half-space, each facet is tight at >= dim vertices, and each vertex
  /// is tight at >= dim facets (so the list holds extreme points only).
  ConvexBody(int dim, std::vector<std::vector<Rational>> vertices,
             std::optional<std::vector<Halfspace>> facets);

  static ConvexBody simplex(int dim);
  static ConvexBody box(int dim);
  static ConvexBody interval(const Rational& a, const Rational& b);

  int dim() const { return dim_; }
  const std::vector<std::vector<Rational>>& vertices() const { return vertices_; }
  bool has_facets() const { return facets_.has_value(); }
  const std::vector<Halfspace>& facets() const;

  /// Exact membership x in P. Requires facets for dim >= 2.
  bool contains(std::span<const Rational> x) const;

  /// True iff 0 is a member of P (admissibility of the associated weight class).
  bool contains_origin() const;

  std::string describe() const;

 private:
  int dim_;
  std::vector<std::vector<Rational>> vertices_;
  std::optional<std::vector<Halfspace>> facets_;
};

/// All J in (nP intersect Z^d), in graded order: total degree |J| ascending,
/// ties broken lexicographically with the leading coordinate dominant (so for
/// d=2, degree 1 lists (1,0) before (0,1): 1, z1, z2, z1^2, z1 z2, z2^2, ...).
std::vector<MultiIndex> lattice_points(const ConvexBody& body, int n);

/// Logarithmic indicator H_P(z) = max over vertices V of sum_i V_i log|z_i|,
/// an extended real (-inf when every vertex loads a zero coordinate).
double h_p_eval(const ConvexBody& body, std::span<const Complex> z);

/// Exact volume and C_P via fan triangulation from the vertex `apex_index`
/// (the result is identical for every apex; exposed to test exactly that).
VolumeInfo volume_and_cp(const ConvexBody& body, size_t apex_index = 0);

/// Monge-Ampere mass n_d = d! * Vol(P).
Rational monge_ampere_mass(const ConvexBody& body);

InclusionConstants simplex_inclusion(const ConvexBody& body);

/// Graded order comparator used for lattice points / monomial bases.
bool graded_before(const MultiIndex& a, const MultiIndex& b);

}  // namespace pluripot
