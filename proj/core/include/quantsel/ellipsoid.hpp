#pragma once

#include <optional>
#include <vector>

#include "quantsel/geometry.hpp"

namespace quantsel {

/// Image of the unit ball under x -> shape*x + center, with shape symmetric
/// positive definite (exact rational entries).
struct Ellipsoid {
  MatQ shape;
  VecQ center;

  int dim() const { return static_cast<int>(center.size()); }
  Rat det_shape() const;     // = volume / kappa_d, exact
  double volume() const;     // det(shape) * kappa_d, floating point
  void validate() const;     // symmetry + exact PD, throws otherwise
};

/// Point in R^{d(d+3)/2}: upper triangle of the shape matrix (row-major),
/// then the center.
struct ParamPoint {
  VecQ coords;
};

int param_dim(int d);  // d(d+3)/2

ParamPoint encode(const Ellipsoid& e);

/// Throws NotPositiveDefinite when the triangle does not decode to a PD matrix.
Ellipsoid decode(const ParamPoint& p, int d);

Ellipsoid shrink(const Ellipsoid& e, const Rat& factor);

/// decode(sum w_i p_i); PD is guaranteed on valid input and re-verified.
Ellipsoid combination_decode(const std::vector<ParamPoint>& points,
                             const std::vector<Rat>& weights, int d);

/// Inscribed rational polytope of an ellipsoid plus the exact squared shrink
/// factor s^2 such that shrink(e, s) is inside the polytope. d <= 3.
struct InscribedPolytope {
  ConvexBody body;
  Rat factor_sq;   // s^2, exact
  Rat factor;      // rational s with s*s <= factor_sq
};

InscribedPolytope inscribed_polytope(const Ellipsoid& e);

/// vol(combination)^q >= prod vol_i^{p_i} with weights p_i/q: exact
/// log-concavity comparison after clearing kappa_d.
bool log_concavity_holds(const std::vector<Ellipsoid>& parts,
                         const std::vector<Rat>& weights, const Ellipsoid& comb);

double kappa(int d);  // unit-ball volume: 2, pi, 4pi/3

/// Tight rational lower bound on kappa_d (d <= 3).
Rat kappa_lower(int d);

/// Sufficient exact test for kappa_d * det(shape) >= target.
bool ellipsoid_volume_at_least(const Ellipsoid& e, const Rat& target);

// exact: e inside every halfspace of hrep, via <a,c> + |shape a| <= b
// compared with squares (no roots)
bool contains_ellipsoid(const HRep& hrep, const Ellipsoid& e);

/// Unit-norm rational points on the circle/sphere (for inscribed polytopes
/// and exact-length segment directions).
VecQ rational_circle_point(const Rat& t);     // (1-t^2, 2t)/(1+t^2)
VecQ rational_sphere_point(const Rat& u, const Rat& v);  // stereographic

}  // namespace quantsel
