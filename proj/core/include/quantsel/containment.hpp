#pragma once

#include "quantsel/ellipsoid.hpp"
#include "quantsel/geometry.hpp"

namespace quantsel {

/// Exact membership in the body's hull (LP-free when the HRep is cached).
bool body_contains_point(const ConvexBody& body, const VecQ& p);

/// inner entirely inside outer's hull (vertex check).
bool body_contains_body(const ConvexBody& outer, const ConvexBody& inner);

/// Ellipsoid inside the hull of a tuple of bodies.
bool tuple_hull_contains_ellipsoid(const std::vector<ConvexBody>& bodies,
                                   const Ellipsoid& e);

}  // namespace quantsel
