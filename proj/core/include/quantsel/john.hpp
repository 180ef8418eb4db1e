#pragma once

#include "quantsel/ellipsoid.hpp"
#include "quantsel/geometry.hpp"

namespace quantsel {

/// Maximum-volume inscribed ellipsoid, certified: the returned ellipsoid is
/// exactly inside the body (rationalized + shrink loop) and its volume is at
/// least d^-d * vol(body) * (1 - 1e-4). Exact and optimal for d = 1.
/// Throws DegenerateHull / OptimizerFailed.
Ellipsoid john_ellipsoid(const ConvexBody& body);

/// The exact-volume lower-bound check used for certification:
/// kappa_lo * det(shape) >= d^-d * vol * (1 - 1e-4), all rational.
bool john_volume_bound_holds(const Ellipsoid& e, const Rat& body_volume);

}  // namespace quantsel
